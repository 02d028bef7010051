// Copyright 2026 The podocp Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "podocp/problem.hpp"

namespace podocp {

/// Trajectories in L²(0,T;V) sharing one grid and one dimension.
class SnapshotSet {
public:
  SnapshotSet() = default;
  SnapshotSet(Eigen::Index dim, const TimeGrid& grid) : dim_(dim), grid_(grid) {}

  void add(const Trajectory& s, std::string label = {});

  [[nodiscard]] std::size_t size() const noexcept { return snapshots_.size(); }
  [[nodiscard]] bool empty() const noexcept { return snapshots_.empty(); }
  [[nodiscard]] Eigen::Index dim() const noexcept { return dim_; }
  [[nodiscard]] const TimeGrid& grid() const noexcept { return grid_; }
  [[nodiscard]] const DenseMatrix& operator[](std::size_t i) const { return snapshots_.at(i); }
  [[nodiscard]] const std::string& label(std::size_t i) const { return labels_.at(i); }

  /// All slices side by side, each column scaled by √Δt (N × size·K).
  [[nodiscard]] DenseMatrix weighted_columns() const;

private:
  Eigen::Index dim_ = 0;
  TimeGrid grid_;
  std::vector<DenseMatrix> snapshots_;
  std::vector<std::string> labels_;
};

struct PodBasis {
  DenseMatrix modes;    // N × r, W_V-orthonormal columns
  Vector eigenvalues;   // λ₁ ≥ … ≥ λ_r ≥ 0 of the retained modes
  Vector spectrum;      // every Gramian eigenvalue, clipped at 0, non-increasing
  double total_energy = 0.0;
  double tail_energy = 0.0;    // Σ_{i>r} λᵢ
  Eigen::Index max_rank = 0;   // eigenvalues above the 1e-13·λ₁ cutoff

  [[nodiscard]] Eigen::Index rank() const noexcept { return modes.cols(); }
};

/// Eigenvalues at or below this fraction of λ₁ count as numerically zero.
inline constexpr double kPodRankCutoff = 1e-13;

/// Method of snapshots in the V product. Keeps the smallest r with
/// Σ_{i≤r} λᵢ ≥ (1 − energy_tol)·Σᵢ λᵢ; energy_tol = 0 yields the maximal rank.
PodBasis compute_pod(const SnapshotSet& snapshots, const SparseSymMatrix& v_product, const TimeGrid& grid,
                     double energy_tol);

/// Same construction with a prescribed rank (clamped to the numerical rank).
PodBasis compute_pod_rank(const SnapshotSet& snapshots, const SparseSymMatrix& v_product, const TimeGrid& grid,
                          Eigen::Index rank);

/// Σ_s Δt·Σ_k ‖s_k − Π s_k‖²_V for the V-orthogonal projection onto the basis.
double projection_error(const SnapshotSet& snapshots, const PodBasis& basis, const SparseSymMatrix& v_product,
                        const TimeGrid& grid);

/// True iff ‖(I − Π)c‖_{L²(0,T;V)} > rel_tol·‖c‖_{L²(0,T;V)}.
bool has_new_information(const PodBasis& basis, const Trajectory& candidate, const SparseSymMatrix& v_product,
                         const TimeGrid& grid, double rel_tol = 1e-10);

/// One mode per column, header row of eigenvalues.
void write_basis_csv(std::ostream& out, const PodBasis& basis);

}  // namespace podocp
