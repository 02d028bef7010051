// Copyright 2026 The podocp Authors.
// SPDX-License-Identifier: Apache-2.0

#include "podocp/numerics.hpp"

#include <cassert>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

namespace podocp {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NotSpd: return "NotSpd";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::EmptyOutput: return "EmptyOutput";
    case ErrorKind::NonFiniteValue: return "NonFiniteValue";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::EmptySnapshotSet: return "EmptySnapshotSet";
    case ErrorKind::ZeroEnergy: return "ZeroEnergy";
    case ErrorKind::OracleFailure: return "OracleFailure";
  }
  return "Unknown";
}

SparseSymMatrix::SparseSymMatrix(SparseMatrix m, double symmetry_tol) : m_(std::move(m)) {
  PODOCP_REQUIRE(m_.rows() == m_.cols(), ErrorKind::DimensionMismatch, "sparse matrix must be square");
  PODOCP_REQUIRE(m_.rows() >= 1, ErrorKind::InvalidArgument, "sparse matrix must be non-empty");
  m_.makeCompressed();
  double scale = 0.0;
  for (Eigen::Index i = 0; i < m_.nonZeros(); ++i) {
    const double v = m_.valuePtr()[i];
    PODOCP_REQUIRE(std::isfinite(v), ErrorKind::NonFiniteValue, "sparse matrix has a non-finite entry");
    scale = std::max(scale, std::abs(v));
  }
  const SparseMatrix diff = SparseMatrix(m_.transpose()) - m_;
  double asym = 0.0;
  for (Eigen::Index i = 0; i < diff.nonZeros(); ++i) asym = std::max(asym, std::abs(diff.valuePtr()[i]));
  PODOCP_REQUIRE(asym <= symmetry_tol * std::max(scale, 1.0), ErrorKind::InvalidArgument,
                 "sparse matrix is not symmetric");
}

Vector SparseSymMatrix::operator*(const Vector& x) const {
  PODOCP_REQUIRE(x.size() == dim(), ErrorKind::DimensionMismatch, "matrix-vector size mismatch");
  return m_ * x;
}

DenseMatrix SparseSymMatrix::operator*(const DenseMatrix& x) const {
  PODOCP_REQUIRE(x.rows() == dim(), ErrorKind::DimensionMismatch, "matrix-matrix size mismatch");
  return m_ * x;
}

double SparseSymMatrix::inner(const Vector& x, const Vector& y) const {
  PODOCP_REQUIRE(x.size() == dim() && y.size() == dim(), ErrorKind::DimensionMismatch,
                 "inner product size mismatch");
  return x.dot(m_ * y);
}

DenseSymMatrix::DenseSymMatrix(DenseMatrix m) : m_(std::move(m)) {
  PODOCP_REQUIRE(m_.rows() == m_.cols(), ErrorKind::DimensionMismatch, "dense matrix must be square");
  PODOCP_REQUIRE(m_.rows() >= 1, ErrorKind::InvalidArgument, "dense matrix must be non-empty");
  PODOCP_REQUIRE(m_.allFinite(), ErrorKind::NonFiniteValue, "dense matrix has a non-finite entry");
  const double scale = std::max(m_.cwiseAbs().maxCoeff(), 1e-300);
  PODOCP_REQUIRE((m_ - m_.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * scale, ErrorKind::InvalidArgument,
                 "dense matrix is not symmetric");
  m_ = 0.5 * (m_ + m_.transpose()).eval();
}

void SpdFactorization::analyze(const SparseMatrix& pattern) {
  PODOCP_REQUIRE(pattern.rows() == pattern.cols(), ErrorKind::DimensionMismatch, "factorization needs a square matrix");
  llt_.analyzePattern(pattern);
  n_ = pattern.rows();
  analyzed_ = true;
  factorized_ = false;
}

void SpdFactorization::factorize(const SparseMatrix& a) {
  PODOCP_REQUIRE(analyzed_, ErrorKind::InvalidArgument, "factorize called before analyze");
  PODOCP_REQUIRE(a.rows() == n_ && a.cols() == n_, ErrorKind::DimensionMismatch, "factorization size mismatch");
  llt_.factorize(a);
  PODOCP_REQUIRE(llt_.info() == Eigen::Success, ErrorKind::NotSpd, "Cholesky met a nonpositive pivot");
  factorized_ = true;
#ifndef NDEBUG
  a_ = a;
#endif
}

Vector SpdFactorization::solve(const Vector& b) const {
  PODOCP_REQUIRE(factorized_, ErrorKind::InvalidArgument, "solve called before factorize");
  PODOCP_REQUIRE(b.size() == n_, ErrorKind::DimensionMismatch, "right-hand side size mismatch");
  Vector x = llt_.solve(b);
#ifndef NDEBUG
  const double bn = b.norm();
  assert(bn == 0.0 || (a_ * x - b).norm() <= 1e-10 * bn);
#endif
  return x;
}

DenseMatrix SpdFactorization::solve(const DenseMatrix& b) const {
  PODOCP_REQUIRE(factorized_, ErrorKind::InvalidArgument, "solve called before factorize");
  PODOCP_REQUIRE(b.rows() == n_, ErrorKind::DimensionMismatch, "right-hand side size mismatch");
  return llt_.solve(b);
}

Vector solve_spd(const SparseSymMatrix& a, const Vector& b) {
  PODOCP_REQUIRE(b.size() == a.dim(), ErrorKind::DimensionMismatch, "solve_spd: dim(b) != n");
  SpdFactorization f(a.raw());
  Vector x = f.solve(b);
  // One step of iterative refinement keeps the residual at round-off level
  // for the mildly ill-conditioned stiffness-type matrices used here.
  const Vector r = b - a.raw() * x;
  if (r.norm() > 1e-14 * b.norm()) x += f.solve(r);
  return x;
}

SymEigen eig_sym(const DenseSymMatrix& g) {
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(g.raw());
  PODOCP_REQUIRE(es.info() == Eigen::Success, ErrorKind::ConvergenceFailure,
                 "symmetric eigensolver did not converge");
  // Eigen returns ascending order.
  const Eigen::Index m = g.dim();
  SymEigen out{Vector(m), DenseMatrix(m, m)};
  for (Eigen::Index i = 0; i < m; ++i) {
    out.values(i) = es.eigenvalues()(m - 1 - i);
    out.vectors.col(i) = es.eigenvectors().col(m - 1 - i);
  }
  return out;
}

DenseMatrix gram_schmidt(const DenseMatrix& columns, const SparseSymMatrix& m, double drop_tol) {
  PODOCP_REQUIRE(drop_tol > 0.0, ErrorKind::InvalidArgument, "drop_tol must be positive");
  PODOCP_REQUIRE(columns.rows() == m.dim(), ErrorKind::DimensionMismatch, "gram_schmidt: vector size != dim(M)");
  const Eigen::Index n = columns.rows();
  DenseMatrix q(n, columns.cols());
  DenseMatrix mq(n, columns.cols());
  Eigen::Index kept = 0;
  for (Eigen::Index j = 0; j < columns.cols(); ++j) {
    Vector v = columns.col(j);
    const double original = std::sqrt(std::max(m.quad(v), 0.0));
    if (original == 0.0) continue;
    // Twice is enough.
    for (int pass = 0; pass < 2 && kept > 0; ++pass) {
      const Vector coeff = mq.leftCols(kept).transpose() * v;
      v.noalias() -= q.leftCols(kept) * coeff;
    }
    const Vector mv = m.raw() * v;
    const double norm = std::sqrt(std::max(v.dot(mv), 0.0));
    if (norm <= drop_tol * original) continue;
    q.col(kept) = v / norm;
    mq.col(kept) = mv / norm;
    ++kept;
  }
  PODOCP_REQUIRE(kept > 0, ErrorKind::EmptyOutput, "gram_schmidt dropped every input vector");
  return q.leftCols(kept);
}

std::vector<Vector> gram_schmidt(std::span<const Vector> vectors, const SparseSymMatrix& m, double drop_tol) {
  PODOCP_REQUIRE(!vectors.empty(), ErrorKind::EmptyOutput, "gram_schmidt got no vectors");
  DenseMatrix cols(m.dim(), static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    PODOCP_REQUIRE(vectors[j].size() == m.dim(), ErrorKind::DimensionMismatch, "gram_schmidt: vector size != dim(M)");
    cols.col(static_cast<Eigen::Index>(j)) = vectors[j];
  }
  const DenseMatrix q = gram_schmidt(cols, m, drop_tol);
  std::vector<Vector> out;
  out.reserve(static_cast<std::size_t>(q.cols()));
  for (Eigen::Index j = 0; j < q.cols(); ++j) out.emplace_back(q.col(j));
  return out;
}

}  // namespace podocp
