// Copyright 2026 The podocp Authors.
// SPDX-License-Identifier: Apache-2.0

#include "podocp/rom.hpp"

#include <cmath>

namespace podocp {

namespace {

DenseMatrix observe(const OcpProblem& p, const DenseMatrix& x) {
  if (p.observation) return *p.observation * x;
  return x;
}

DenseMatrix symmetrized(DenseMatrix m) { return 0.5 * (m + m.transpose()); }

// Pivots below 1e-12 of the largest diagonal entry mean a numerically
// dependent basis (for instance a repeated mode).
bool well_conditioned(const Eigen::LLT<DenseMatrix>& llt, const DenseMatrix& a) {
  if (llt.info() != Eigen::Success) return false;
  const Vector pivots = DenseMatrix(llt.matrixL()).diagonal().cwiseAbs2();
  return pivots.minCoeff() > 1e-12 * a.diagonal().maxCoeff();
}

void require_nondegenerate(const ReducedModel& rm) {
  PODOCP_REQUIRE(!rm.degenerate, ErrorKind::NotSpd, "reduced mass or step matrix is singular; the basis is broken");
}

}  // namespace

ReducedModel build_reduced(const OcpProblem& problem, const PodBasis& basis, double drop_tol) {
  problem.validate();
  PODOCP_REQUIRE(basis.rank() > 0, ErrorKind::InvalidArgument, "reduced model needs a nonempty basis");
  PODOCP_REQUIRE(basis.modes.rows() == problem.state_dim(), ErrorKind::DimensionMismatch,
                 "basis dimension does not match the state space");

  ReducedModel rm;
  rm.basis = basis;
  rm.grid = problem.grid;
  rm.beta = problem.beta;
  const DenseMatrix& v = basis.modes;
  const auto& mass = problem.state_mass().raw();

  const DenseMatrix mv = mass * v;
  rm.mass = symmetrized(v.transpose() * mv);
  for (std::size_t q = 0; q < problem.op.terms(); ++q)
    rm.operator_terms.push_back(symmetrized(v.transpose() * (problem.op.component(q).raw() * v)));

  Eigen::LLT<DenseMatrix> mass_llt(rm.mass);
  rm.degenerate = !well_conditioned(mass_llt, rm.mass);
  rm.initial = rm.degenerate ? Vector(Vector::Zero(v.cols())) : Vector(mass_llt.solve(mv.transpose() * problem.y0));

  const DenseMatrix cv = observe(problem, v);
  const DenseMatrix mcv = mass * cv;
  rm.tracking = symmetrized(cv.transpose() * mcv);
  rm.target_load = mcv.transpose() * problem.target.values();
  rm.target_energy = (problem.target.values().cwiseProduct(mass * problem.target.values())).colwise().sum().transpose();

  // uᵢ = M_U⁻¹Bᵀvᵢ
  rm.input_projection = (problem.input.transpose() * v).transpose();
  if (problem.input_is_embedding) {
    rm.adjoint_lift = v;
  } else {
    SpdFactorization mu(problem.control_product().raw());
    rm.adjoint_lift = mu.solve(DenseMatrix(rm.input_projection.transpose()));
  }
  rm.control_basis = gram_schmidt(rm.adjoint_lift, problem.control_product(), drop_tol);
  rm.input = rm.input_projection * rm.control_basis;

  const double dt = problem.grid.dt();
  rm.step_factors.reserve(static_cast<std::size_t>(problem.grid.steps()));
  for (int k = 1; k <= problem.grid.steps(); ++k) {
    DenseMatrix step = rm.mass;
    const double t = problem.grid.time(k);
    for (std::size_t q = 0; q < rm.operator_terms.size(); ++q)
      step += dt * problem.op.coefficient(q, t) * rm.operator_terms[q];
    rm.step_factors.emplace_back(step);
    rm.degenerate = rm.degenerate || !well_conditioned(rm.step_factors.back(), step);
  }
  return rm;
}

namespace {

// load(:,k) is the full right-hand side contribution Δt·(input) at t_{k+1}.
Trajectory reduced_state_from_load(const ReducedModel& rm, const DenseMatrix& load) {
  require_nondegenerate(rm);
  Trajectory y(rm.rank(), rm.grid);
  Vector prev = rm.initial;
  for (int k = 0; k < rm.grid.steps(); ++k) {
    prev = rm.step_factors[static_cast<std::size_t>(k)].solve(rm.mass * prev + load.col(k));
    y.slice(k) = prev;
  }
  return y;
}

}  // namespace

Trajectory solve_reduced_state(const ReducedModel& rm, const Trajectory& coeffs) {
  PODOCP_REQUIRE(coeffs.dim() == rm.control_rank() && coeffs.steps() == rm.grid.steps(),
                 ErrorKind::DimensionMismatch, "reduced control must have K slices of dimension r_u");
  return reduced_state_from_load(rm, rm.grid.dt() * (rm.input * coeffs.values()));
}

Trajectory solve_reduced_state_full_control(const ReducedModel& rm, const Trajectory& u) {
  PODOCP_REQUIRE(u.dim() == rm.input_projection.cols() && u.steps() == rm.grid.steps(),
                 ErrorKind::DimensionMismatch, "control must have K slices of control dimension");
  return reduced_state_from_load(rm, rm.grid.dt() * (rm.input_projection * u.values()));
}

Trajectory solve_reduced_adjoint(const ReducedModel& rm, const Trajectory& y_hat) {
  PODOCP_REQUIRE(y_hat.dim() == rm.rank() && y_hat.steps() == rm.grid.steps(), ErrorKind::DimensionMismatch,
                 "reduced state must have K slices of dimension r");
  require_nondegenerate(rm);
  const double dt = rm.grid.dt();
  Trajectory p(rm.rank(), rm.grid);
  Vector next = Vector::Zero(rm.rank());
  for (int k = rm.grid.steps() - 1; k >= 0; --k) {
    const Vector rhs = rm.mass * next + dt * (rm.tracking * y_hat.slice(k) - rm.target_load.col(k));
    next = rm.step_factors[static_cast<std::size_t>(k)].solve(rhs);
    p.slice(k) = next;
  }
  return p;
}

double reduced_tracking(const ReducedModel& rm, const Trajectory& y_hat) {
  double sum = 0.0;
  for (int k = 0; k < rm.grid.steps(); ++k) {
    const auto yk = y_hat.slice(k);
    sum += yk.dot(rm.tracking * yk) - 2.0 * yk.dot(rm.target_load.col(k)) + rm.target_energy(k);
  }
  return 0.5 * rm.grid.dt() * sum;
}

double reduced_objective(const ReducedModel& rm, const Trajectory& coeffs) {
  const Trajectory y = solve_reduced_state(rm, coeffs);
  return reduced_tracking(rm, y) + 0.5 * rm.beta * rm.grid.dt() * coeffs.values().squaredNorm();
}

Trajectory lift_control(const ReducedModel& rm, const Trajectory& coeffs) {
  PODOCP_REQUIRE(coeffs.dim() == rm.control_rank(), ErrorKind::DimensionMismatch, "lift: wrong coefficient size");
  return Trajectory(rm.control_basis * coeffs.values(), coeffs.grid());
}

Trajectory project_control(const ReducedModel& rm, const OcpProblem& problem, const Trajectory& u) {
  PODOCP_REQUIRE(u.dim() == problem.control_dim(), ErrorKind::DimensionMismatch, "project: wrong control size");
  const DenseMatrix mu = problem.control_product().raw() * u.values();
  return Trajectory(rm.control_basis.transpose() * mu, u.grid());
}

double reduced_state_norm(const ReducedModel& rm, const Trajectory& y_hat) {
  PODOCP_REQUIRE(y_hat.dim() == rm.rank(), ErrorKind::DimensionMismatch, "reduced norm: wrong size");
  const DenseMatrix my = rm.mass * y_hat.values();
  return std::sqrt(std::max(rm.grid.dt() * y_hat.values().cwiseProduct(my).sum(), 0.0));
}

namespace {

void check_consistent(const ReducedModel& rm, const OcpProblem& problem) {
  PODOCP_REQUIRE(rm.grid == problem.grid && rm.beta == problem.beta &&
                     rm.basis.modes.rows() == problem.state_dim() &&
                     rm.control_basis.rows() == problem.control_dim(),
                 ErrorKind::DimensionMismatch, "reduced model was not built from this problem");
}

}  // namespace

ReducedOcpResult solve_reduced_ocp_full(const ReducedModel& rm, const OcpProblem& problem, const BbConfig& cfg,
                                        const Trajectory& start) {
  check_consistent(rm, problem);
  PODOCP_REQUIRE(start.dim() == rm.control_rank() && start.steps() == rm.grid.steps(), ErrorKind::DimensionMismatch,
                 "reduced start must have K slices of dimension r_u");
  const double dt = rm.grid.dt();
  const double beta = rm.beta;

  auto oracle = [&](const DenseMatrix& u) {
    const Trajectory y = reduced_state_from_load(rm, dt * (rm.input * u));
    const Trajectory p = solve_reduced_adjoint(rm, y);
    GradientEvaluation g;
    g.gradient = beta * u + rm.input.transpose() * p.values();
    g.cost = reduced_tracking(rm, y) + 0.5 * beta * dt * u.squaredNorm();
    return g;
  };
  auto inner = [dt](const DenseMatrix& a, const DenseMatrix& b) { return dt * a.cwiseProduct(b).sum(); };

  BbResult bb = bb_minimize(oracle, inner, start.values(), cfg);
  Trajectory controls(std::move(bb.point), rm.grid);
  Trajectory y = solve_reduced_state(rm, controls);
  Trajectory p = solve_reduced_adjoint(rm, y);
  return {std::move(controls), std::move(y), std::move(p), std::move(bb.report)};
}

ReducedOcpResult solve_reduced_ocp_state_only(const ReducedModel& rm, const OcpProblem& problem,
                                              const BbConfig& cfg, const Trajectory& start) {
  check_consistent(rm, problem);
  PODOCP_REQUIRE(start.dim() == problem.control_dim() && start.steps() == rm.grid.steps(),
                 ErrorKind::DimensionMismatch, "start must have K slices of control dimension");
  const double dt = rm.grid.dt();
  const double beta = rm.beta;
  const auto& mu = problem.control_product();

  auto oracle = [&](const DenseMatrix& u) {
    const Trajectory y = reduced_state_from_load(rm, dt * (rm.input_projection * u));
    const Trajectory p = solve_reduced_adjoint(rm, y);
    GradientEvaluation g;
    g.gradient = beta * u + rm.adjoint_lift * p.values();
    g.cost = reduced_tracking(rm, y) + 0.5 * beta * space_time_inner(u, u, mu, dt);
    return g;
  };
  auto inner = [&mu, dt](const DenseMatrix& a, const DenseMatrix& b) { return space_time_inner(a, b, mu, dt); };

  BbResult bb = bb_minimize(oracle, inner, start.values(), cfg);
  Trajectory controls(std::move(bb.point), rm.grid);
  Trajectory y = solve_reduced_state_full_control(rm, controls);
  Trajectory p = solve_reduced_adjoint(rm, y);
  return {std::move(controls), std::move(y), std::move(p), std::move(bb.report)};
}

}  // namespace podocp
