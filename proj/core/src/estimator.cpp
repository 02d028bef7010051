// Copyright 2026 The podocp Authors.
// SPDX-License-Identifier: Apache-2.0

#include "podocp/estimator.hpp"

namespace podocp {

ErrorBounds bounds_from_gradient_norm(double grad_norm, double beta, double cs_norm_bound) {
  PODOCP_REQUIRE(beta > 0.0, ErrorKind::InvalidArgument, "beta must be positive");
  ErrorBounds b;
  b.grad_norm = grad_norm;
  b.upper = grad_norm / beta;
  b.lower = grad_norm / (beta + cs_norm_bound * cs_norm_bound);
  return b;
}

Estimate estimate(FomSolver& solver, const Trajectory& u_tilde) {
  const auto& p = solver.problem();
  GradientResult g = solver.gradient(u_tilde);
  const double norm = space_time_norm(g.grad, p.control_product(), p.grid);
  return {bounds_from_gradient_norm(norm, p.beta, p.cs_norm_bound), std::move(g.y), std::move(g.p)};
}

double true_error(const Trajectory& u, const Trajectory& u_ref, const SparseSymMatrix& control_product,
                  const TimeGrid& grid) {
  PODOCP_REQUIRE(u.dim() == u_ref.dim() && u.steps() == u_ref.steps(), ErrorKind::DimensionMismatch,
                 "true_error: control shapes differ");
  return space_time_norm(Trajectory(u.values() - u_ref.values(), u.grid()), control_product, grid);
}

double optimal_value_gap(const OcpProblem& problem, const Trajectory& u_fom, const ReducedModel& rm,
                         const Trajectory& u_red) {
  FomSolver solver(problem);
  return reduced_cost(solver, u_fom) - reduced_objective(rm, u_red);
}

}  // namespace podocp
