// Copyright 2026 The podocp Authors.
// SPDX-License-Identifier: Apache-2.0

#include "podocp/problem.hpp"

#include <cmath>
#include <numbers>

namespace podocp {

TimeGrid::TimeGrid(double horizon, int steps) : horizon_(horizon), steps_(steps) {
  PODOCP_REQUIRE(horizon > 0.0 && std::isfinite(horizon), ErrorKind::InvalidArgument, "horizon must be positive");
  PODOCP_REQUIRE(steps >= 1, ErrorKind::InvalidArgument, "time grid needs at least one step");
  dt_ = horizon_ / steps_;
}

Trajectory::Trajectory(Eigen::Index dim, const TimeGrid& grid)
    : values_(DenseMatrix::Zero(dim, grid.steps())), grid_(grid) {}

Trajectory::Trajectory(DenseMatrix values, const TimeGrid& grid) : values_(std::move(values)), grid_(grid) {
  PODOCP_REQUIRE(values_.cols() == grid_.steps(), ErrorKind::DimensionMismatch,
                 "trajectory slice count does not match the time grid");
}

void AffineOperator::add_term(SparseSymMatrix component, Coefficient coefficient) {
  if (!components_.empty()) {
    PODOCP_REQUIRE(component.dim() == components_.front().dim(), ErrorKind::DimensionMismatch,
                   "affine operator components must share one dimension");
  }
  components_.push_back(std::move(component));
  coefficients_.push_back(std::move(coefficient));
}

SparseMatrix AffineOperator::evaluate(double t) const {
  PODOCP_REQUIRE(!components_.empty(), ErrorKind::InvalidArgument, "affine operator has no terms");
  SparseMatrix a = coefficients_[0](t) * components_[0].raw();
  for (std::size_t q = 1; q < components_.size(); ++q) a += coefficients_[q](t) * components_[q].raw();
  return a;
}

void OcpProblem::validate() const {
  PODOCP_REQUIRE(space != nullptr, ErrorKind::InvalidArgument, "problem has no FE space");
  PODOCP_REQUIRE(beta > 0.0, ErrorKind::InvalidArgument, "beta must be positive");
  PODOCP_REQUIRE(coercivity > 0.0, ErrorKind::InvalidArgument, "coercivity constant must be positive");
  PODOCP_REQUIRE(cs_norm_bound >= 0.0, ErrorKind::InvalidArgument, "cs_norm_bound must be non-negative");
  PODOCP_REQUIRE(op.terms() > 0 && op.component(0).dim() == state_dim(), ErrorKind::DimensionMismatch,
                 "operator dimension does not match the state space");
  PODOCP_REQUIRE(input.rows() == state_dim(), ErrorKind::DimensionMismatch, "input map rows != state dimension");
  PODOCP_REQUIRE(control_product().dim() == control_dim(), ErrorKind::DimensionMismatch,
                 "control product does not match the input map");
  if (observation) {
    PODOCP_REQUIRE(observation->rows() == state_dim() && observation->cols() == state_dim(),
                   ErrorKind::DimensionMismatch, "observation map must be N × N");
  }
  PODOCP_REQUIRE(target.dim() == state_dim() && target.grid() == grid, ErrorKind::DimensionMismatch,
                 "target must have K slices of state dimension");
  PODOCP_REQUIRE(y0.size() == state_dim(), ErrorKind::DimensionMismatch, "initial value has wrong dimension");
}

double model_target(double t, double x1, double x2) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  return std::sin(two_pi * x1 * t) * std::sin(two_pi * x2 * t) * std::exp(2.0 * x1) / 6.0;
}

OcpProblem model_problem(int nodes_per_side, int time_steps, double beta, double horizon) {
  PODOCP_REQUIRE(beta > 0.0, ErrorKind::InvalidArgument, "beta must be positive");
  OcpProblem p;
  p.space = build_space(nodes_per_side);
  p.grid = TimeGrid(horizon, time_steps);
  p.op.add_term(p.space->stiffness, [](double) { return 1.0; });
  p.op.add_term(p.space->mass, [](double t) { return 2.0 + std::sin(4.0 * std::numbers::pi * t); });
  p.input = p.space->mass.raw();
  p.input_is_embedding = true;
  p.target = Trajectory::zeros(p.space->dim(), p.grid);
  for (int k = 0; k < time_steps; ++k) {
    const double t = p.grid.time(k + 1);
    p.target.slice(k) = interpolate(*p.space, [t](double x1, double x2) { return model_target(t, x1, x2); });
  }
  p.y0 = Vector::Zero(p.space->dim());
  p.beta = beta;
  p.coercivity = 1.0;
  p.cs_norm_bound = 1.0;
  return p;
}

double space_time_inner(const DenseMatrix& u, const DenseMatrix& v, const SparseSymMatrix& m, double dt) {
  PODOCP_REQUIRE(u.rows() == m.dim() && v.rows() == m.dim() && u.cols() == v.cols(), ErrorKind::DimensionMismatch,
                 "space-time inner product size mismatch");
  const DenseMatrix mv = m.raw() * v;
  return dt * u.cwiseProduct(mv).sum();
}

double space_time_norm(const Trajectory& u, const SparseSymMatrix& m, const TimeGrid& grid) {
  PODOCP_REQUIRE(u.dim() == m.dim(), ErrorKind::DimensionMismatch, "slice dimension does not match M");
  PODOCP_REQUIRE(u.steps() == grid.steps(), ErrorKind::DimensionMismatch, "trajectory does not match the grid");
  return std::sqrt(std::max(space_time_inner(u.values(), u.values(), m, grid.dt()), 0.0));
}

double space_time_norm(const Trajectory& u, const SparseSymMatrix& m) { return space_time_norm(u, m, u.grid()); }

}  // namespace podocp
