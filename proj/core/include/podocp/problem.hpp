// Copyright 2026 The podocp Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "podocp/fem.hpp"
#include "podocp/numerics.hpp"

namespace podocp {

/// Uniform grid t_k = k·Δt, k = 0..K, on [0, T].
class TimeGrid {
public:
  TimeGrid() = default;
  TimeGrid(double horizon, int steps);

  [[nodiscard]] double horizon() const noexcept { return horizon_; }
  [[nodiscard]] int steps() const noexcept { return steps_; }
  [[nodiscard]] double dt() const noexcept { return dt_; }
  [[nodiscard]] double time(int k) const noexcept { return k == steps_ ? horizon_ : k * dt_; }

  friend bool operator==(const TimeGrid&, const TimeGrid&) = default;

private:
  double horizon_ = 1.0;
  int steps_ = 1;
  double dt_ = 1.0;
};

/// K coefficient vectors of a fixed dimension, one per time node t₁..t_K.
///
/// Column k of values() belongs to t_{k+1} (right-endpoint convention of
/// implicit Euler); the initial value is never stored here.
class Trajectory {
public:
  Trajectory() = default;
  Trajectory(Eigen::Index dim, const TimeGrid& grid);
  Trajectory(DenseMatrix values, const TimeGrid& grid);

  static Trajectory zeros(Eigen::Index dim, const TimeGrid& grid) { return {dim, grid}; }

  [[nodiscard]] Eigen::Index dim() const noexcept { return values_.rows(); }
  [[nodiscard]] int steps() const noexcept { return grid_.steps(); }
  [[nodiscard]] const TimeGrid& grid() const noexcept { return grid_; }

  [[nodiscard]] const DenseMatrix& values() const noexcept { return values_; }
  [[nodiscard]] DenseMatrix& values() noexcept { return values_; }

  [[nodiscard]] auto slice(int k) const { return values_.col(k); }
  [[nodiscard]] auto slice(int k) { return values_.col(k); }

private:
  DenseMatrix values_;
  TimeGrid grid_;
};

/// A(t) = Σ_q θ_q(t)·A_q with symmetric components sharing one dimension.
class AffineOperator {
public:
  using Coefficient = std::function<double(double)>;

  AffineOperator() = default;
  void add_term(SparseSymMatrix component, Coefficient coefficient);

  [[nodiscard]] std::size_t terms() const noexcept { return components_.size(); }
  [[nodiscard]] const SparseSymMatrix& component(std::size_t q) const { return components_.at(q); }
  [[nodiscard]] double coefficient(std::size_t q, double t) const { return coefficients_.at(q)(t); }
  [[nodiscard]] SparseMatrix evaluate(double t) const;

private:
  std::vector<SparseSymMatrix> components_;
  std::vector<Coefficient> coefficients_;
};

/// Discretized linear-quadratic control problem
///
///   min Δt·Σ_k ½‖C y_k − y_d,k‖²_H + (β/2)‖u_k‖²_U
///   s.t. (M_H + Δt·A(t_k)) y_k = M_H y_{k−1} + Δt·B u_k,  y_0 given.
struct OcpProblem {
  std::shared_ptr<const FeSpace> space;
  TimeGrid grid;
  AffineOperator op;
  /// B: control coefficients → load vector in V′ (N × N_U).
  SparseMatrix input;
  /// True when B is the U ↪ V′ embedding with matrix M_U, so that
  /// M_U⁻¹Bᵀ is the identity on coefficient vectors.
  bool input_is_embedding = false;
  /// C acting on state coefficients; identity when empty.
  std::optional<SparseMatrix> observation;
  Trajectory target;
  Vector y0;
  double beta = 1.0;
  double coercivity = 1.0;
  /// User-supplied upper bound for ‖C𝒮‖ (enters the lower error bound).
  double cs_norm_bound = 1.0;

  [[nodiscard]] Eigen::Index state_dim() const { return space->dim(); }
  [[nodiscard]] Eigen::Index control_dim() const { return input.cols(); }
  [[nodiscard]] const SparseSymMatrix& state_mass() const { return space->mass; }
  [[nodiscard]] const SparseSymMatrix& control_product() const { return space->control; }
  [[nodiscard]] const SparseSymMatrix& v_product() const { return space->h1; }

  /// Throws InvalidArgument / DimensionMismatch on inconsistent data.
  void validate() const;
};

/// Desk-scale version of the benchmark problem on (0,1)² with T = horizon:
///   y_d(t,x) = (1/6)·sin(2πx₁t)·sin(2πx₂t)·exp(2x₁),  y₀ = 0,
///   A(t) = K_stiff + (2 + sin(4πt))·M_H,  B = C = identity embeddings.
OcpProblem model_problem(int nodes_per_side, int time_steps, double beta, double horizon = 1.0);

double model_target(double t, double x1, double x2);

/// sqrt(Δt·Σ_k u_kᵀ M u_k) on the grid of u.
double space_time_norm(const Trajectory& u, const SparseSymMatrix& m, const TimeGrid& grid);
double space_time_norm(const Trajectory& u, const SparseSymMatrix& m);

/// Δt·Σ_k u_kᵀ M v_k
double space_time_inner(const DenseMatrix& u, const DenseMatrix& v, const SparseSymMatrix& m, double dt);

}  // namespace podocp
