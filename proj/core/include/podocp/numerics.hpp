// Copyright 2026 The podocp Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include "podocp/error.hpp"

namespace podocp {

using Vector = Eigen::VectorXd;
using DenseMatrix = Eigen::MatrixXd;
using SparseMatrix = Eigen::SparseMatrix<double>;

/// Square symmetric sparse matrix, stored with both triangles.
///
/// Construction validates shape, symmetry and finiteness; instances are
/// immutable afterwards, so they are safe to share across threads.
class SparseSymMatrix {
public:
  SparseSymMatrix() = default;
  explicit SparseSymMatrix(SparseMatrix m, double symmetry_tol = 1e-12);

  [[nodiscard]] Eigen::Index dim() const noexcept { return m_.rows(); }
  [[nodiscard]] const SparseMatrix& raw() const noexcept { return m_; }

  [[nodiscard]] Vector operator*(const Vector& x) const;
  [[nodiscard]] DenseMatrix operator*(const DenseMatrix& x) const;

  /// xᵀ A y
  [[nodiscard]] double inner(const Vector& x, const Vector& y) const;
  /// xᵀ A x
  [[nodiscard]] double quad(const Vector& x) const { return inner(x, x); }

private:
  SparseMatrix m_;
};

/// Dense symmetric matrix (Gramians, reduced products).
class DenseSymMatrix {
public:
  DenseSymMatrix() = default;
  explicit DenseSymMatrix(DenseMatrix m);

  [[nodiscard]] Eigen::Index dim() const noexcept { return m_.rows(); }
  [[nodiscard]] const DenseMatrix& raw() const noexcept { return m_; }

private:
  DenseMatrix m_;
};

/// Sparse Cholesky factorization with an AMD fill-reducing ordering.
///
/// The symbolic analysis is done once per sparsity pattern; `factorize`
/// may then be called repeatedly with matrices sharing that pattern.
class SpdFactorization {
public:
  SpdFactorization() = default;
  explicit SpdFactorization(const SparseMatrix& a) { compute(a); }

  void analyze(const SparseMatrix& pattern);
  void factorize(const SparseMatrix& a);
  void compute(const SparseMatrix& a) {
    analyze(a);
    factorize(a);
  }

  [[nodiscard]] bool analyzed() const noexcept { return analyzed_; }
  [[nodiscard]] Eigen::Index dim() const noexcept { return n_; }

  [[nodiscard]] Vector solve(const Vector& b) const;
  [[nodiscard]] DenseMatrix solve(const DenseMatrix& b) const;

private:
  Eigen::SimplicialLLT<SparseMatrix, Eigen::Lower, Eigen::AMDOrdering<int>> llt_;
  Eigen::Index n_ = 0;
  bool analyzed_ = false;
  bool factorized_ = false;
#ifndef NDEBUG
  SparseMatrix a_;
#endif
};

Vector solve_spd(const SparseSymMatrix& a, const Vector& b);

struct SymEigen {
  Vector values;        // non-increasing
  DenseMatrix vectors;  // orthonormal columns, vectors.col(i) pairs with values(i)
};

SymEigen eig_sym(const DenseSymMatrix& g);

/// M-orthonormalizes `vectors` with two classical Gram–Schmidt passes.
///
/// A vector whose M-norm after projection drops below drop_tol times its
/// original M-norm is discarded. Throws EmptyOutput if nothing survives.
std::vector<Vector> gram_schmidt(std::span<const Vector> vectors, const SparseSymMatrix& m,
                                 double drop_tol);

/// Column-wise variant on a dense block; returns the kept columns.
DenseMatrix gram_schmidt(const DenseMatrix& columns, const SparseSymMatrix& m, double drop_tol);

}  // namespace podocp
