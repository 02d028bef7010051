// Copyright 2026 The podocp Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>

#include "podocp/fom.hpp"
#include "podocp/rom.hpp"

namespace podocp {

/// Two-sided a posteriori bounds on ‖ū − ũ‖_{L²(0,T;U)} for any control ũ:
///
///   ‖∇Ĵ(ũ)‖ / (β + ‖C𝒮‖²)  ≤  ‖ū − ũ‖  ≤  ‖∇Ĵ(ũ)‖ / β.
///
/// The lower bound is only valid if cs_norm_bound really bounds ‖C𝒮‖.
struct ErrorBounds {
  double grad_norm = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  std::optional<double> true_error;
};

ErrorBounds bounds_from_gradient_norm(double grad_norm, double beta, double cs_norm_bound);

struct Estimate {
  ErrorBounds bounds;
  Trajectory y;  // full-order state at ũ, reusable as a snapshot
  Trajectory p;  // full-order adjoint at ũ, reusable as a snapshot
};

/// One full-order state and one adjoint solve, then the bounds.
Estimate estimate(FomSolver& solver, const Trajectory& u_tilde);

/// ‖u − u_ref‖_{L²(0,T;U)}
double true_error(const Trajectory& u, const Trajectory& u_ref, const SparseSymMatrix& control_product,
                  const TimeGrid& grid);

/// Ĵ(u_fom) − Ĵʳ(u_red), each functional evaluated in its own model.
double optimal_value_gap(const OcpProblem& problem, const Trajectory& u_fom, const ReducedModel& rm,
                         const Trajectory& u_red);

}  // namespace podocp
