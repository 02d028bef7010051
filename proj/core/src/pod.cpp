// Copyright 2026 The podocp Authors.
// SPDX-License-Identifier: Apache-2.0

#include "podocp/pod.hpp"

#include <cmath>
#include <ostream>

#include "podocp/csv.hpp"

namespace podocp {

void SnapshotSet::add(const Trajectory& s, std::string label) {
  if (snapshots_.empty() && dim_ == 0) {
    dim_ = s.dim();
    grid_ = s.grid();
  }
  PODOCP_REQUIRE(s.dim() == dim_ && s.grid() == grid_, ErrorKind::DimensionMismatch,
                 "snapshot does not match the set's grid and dimension");
  snapshots_.push_back(s.values());
  labels_.push_back(std::move(label));
}

DenseMatrix SnapshotSet::weighted_columns() const {
  const int k = grid_.steps();
  DenseMatrix y(dim_, static_cast<Eigen::Index>(snapshots_.size()) * k);
  const double w = std::sqrt(grid_.dt());
  for (std::size_t i = 0; i < snapshots_.size(); ++i) y.middleCols(static_cast<Eigen::Index>(i) * k, k) = w * snapshots_[i];
  return y;
}

namespace {

enum class RankRule { Energy, Fixed };

PodBasis build_pod(const SnapshotSet& snapshots, const SparseSymMatrix& v_product, const TimeGrid& grid,
                   RankRule rule, double energy_tol, Eigen::Index fixed_rank) {
  PODOCP_REQUIRE(!snapshots.empty(), ErrorKind::EmptySnapshotSet, "POD needs at least one snapshot");
  PODOCP_REQUIRE(snapshots.dim() == v_product.dim(), ErrorKind::DimensionMismatch, "snapshot dimension != dim(W_V)");
  PODOCP_REQUIRE(snapshots.grid() == grid, ErrorKind::DimensionMismatch, "snapshot grid does not match");

  const DenseMatrix y = snapshots.weighted_columns();
  const DenseMatrix wy = v_product.raw() * y;
  DenseMatrix gram = y.transpose() * wy;
  gram = 0.5 * (gram + gram.transpose()).eval();
  const SymEigen eig = eig_sym(DenseSymMatrix(std::move(gram)));

  PodBasis basis;
  basis.spectrum = eig.values.cwiseMax(0.0);
  basis.total_energy = basis.spectrum.sum();
  PODOCP_REQUIRE(basis.total_energy > 0.0, ErrorKind::ZeroEnergy, "all snapshots are zero");

  const double cutoff = kPodRankCutoff * basis.spectrum(0);
  Eigen::Index max_rank = 0;
  while (max_rank < basis.spectrum.size() && basis.spectrum(max_rank) > cutoff) ++max_rank;
  basis.max_rank = max_rank;

  Eigen::Index r = 0;
  if (rule == RankRule::Fixed) {
    r = std::clamp<Eigen::Index>(fixed_rank, 0, max_rank);
  } else {
    const double target = (1.0 - energy_tol) * basis.total_energy;
    double acc = 0.0;
    while (r < max_rank && acc < target) acc += basis.spectrum(r++);
  }

  if (r > 0) {
    DenseMatrix modes = y * eig.vectors.leftCols(r);
    for (Eigen::Index i = 0; i < r; ++i) modes.col(i) /= std::sqrt(basis.spectrum(i));
    // Modes from small eigenvalues lose V-orthogonality to round-off
    // (error ~ ε·λ₁/λᵢ), so re-orthonormalize; the span is unchanged.
    modes = gram_schmidt(modes, v_product, 1e-8);
    r = modes.cols();
    basis.modes = std::move(modes);
  } else {
    basis.modes = DenseMatrix(snapshots.dim(), 0);
  }
  basis.eigenvalues = basis.spectrum.head(r);
  basis.tail_energy = basis.spectrum.tail(basis.spectrum.size() - r).sum();
  return basis;
}

}  // namespace

PodBasis compute_pod(const SnapshotSet& snapshots, const SparseSymMatrix& v_product, const TimeGrid& grid,
                     double energy_tol) {
  PODOCP_REQUIRE(energy_tol >= 0.0 && energy_tol < 1.0, ErrorKind::InvalidArgument, "energy_tol must lie in [0,1)");
  return build_pod(snapshots, v_product, grid, RankRule::Energy, energy_tol, 0);
}

PodBasis compute_pod_rank(const SnapshotSet& snapshots, const SparseSymMatrix& v_product, const TimeGrid& grid,
                          Eigen::Index rank) {
  PODOCP_REQUIRE(rank >= 0, ErrorKind::InvalidArgument, "rank must be non-negative");
  return build_pod(snapshots, v_product, grid, RankRule::Fixed, 0.0, rank);
}

namespace {

// Σ_k Δt‖(I − Π)s_k‖²_V
double residual_energy(const DenseMatrix& s, const PodBasis& basis, const SparseSymMatrix& w, double dt) {
  DenseMatrix r = s;
  if (basis.rank() > 0) {
    const DenseMatrix ws = w.raw() * s;
    r.noalias() -= basis.modes * (basis.modes.transpose() * ws);
  }
  const DenseMatrix wr = w.raw() * r;
  return dt * r.cwiseProduct(wr).sum();
}

}  // namespace

double projection_error(const SnapshotSet& snapshots, const PodBasis& basis, const SparseSymMatrix& v_product,
                        const TimeGrid& grid) {
  PODOCP_REQUIRE(snapshots.dim() == v_product.dim() && basis.modes.rows() == v_product.dim(),
                 ErrorKind::DimensionMismatch, "projection_error: dimension mismatch");
  PODOCP_REQUIRE(snapshots.grid() == grid, ErrorKind::DimensionMismatch, "projection_error: grid mismatch");
  double total = 0.0;
  for (std::size_t i = 0; i < snapshots.size(); ++i) total += residual_energy(snapshots[i], basis, v_product, grid.dt());
  return total;
}

bool has_new_information(const PodBasis& basis, const Trajectory& candidate, const SparseSymMatrix& v_product,
                         const TimeGrid& grid, double rel_tol) {
  PODOCP_REQUIRE(candidate.dim() == v_product.dim() && basis.modes.rows() == v_product.dim(),
                 ErrorKind::DimensionMismatch, "has_new_information: dimension mismatch");
  PODOCP_REQUIRE(candidate.grid() == grid, ErrorKind::DimensionMismatch, "has_new_information: grid mismatch");
  const double residual = std::sqrt(std::max(residual_energy(candidate.values(), basis, v_product, grid.dt()), 0.0));
  const double norm = space_time_norm(candidate, v_product, grid);
  return residual > rel_tol * norm;
}

void write_basis_csv(std::ostream& out, const PodBasis& basis) {
  std::vector<double> row(static_cast<std::size_t>(basis.rank()));
  for (Eigen::Index i = 0; i < basis.rank(); ++i) row[static_cast<std::size_t>(i)] = basis.eigenvalues(i);
  csv::write_row(out, row);
  for (Eigen::Index n = 0; n < basis.modes.rows(); ++n) {
    for (Eigen::Index i = 0; i < basis.rank(); ++i) row[static_cast<std::size_t>(i)] = basis.modes(n, i);
    csv::write_row(out, row);
  }
}

}  // namespace podocp
