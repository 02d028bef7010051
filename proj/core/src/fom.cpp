// Copyright 2026 The podocp Authors.
// SPDX-License-Identifier: Apache-2.0

#include "podocp/fom.hpp"

#include <string>

#include <Eigen/LU>

namespace podocp {

namespace {

Eigen::VectorXd values_on_pattern(const SparseMatrix& pattern, const SparseMatrix& m) {
  // 0·pattern + m keeps the union structure, which equals the pattern.
  SparseMatrix aligned = 0.0 * pattern + m;
  aligned.makeCompressed();
  PODOCP_REQUIRE(aligned.nonZeros() == pattern.nonZeros(), ErrorKind::InvalidArgument,
                 "operator component is not contained in the step pattern");
  return Eigen::Map<const Eigen::VectorXd>(aligned.valuePtr(), aligned.nonZeros());
}

}  // namespace

FomSolver::FomSolver(const OcpProblem& problem) : problem_(&problem) {
  problem.validate();
  SparseMatrix pattern = problem.state_mass().raw();
  for (std::size_t q = 0; q < problem.op.terms(); ++q) pattern += problem.op.component(q).raw();
  pattern.makeCompressed();
  step_ = pattern;
  mass_values_ = values_on_pattern(pattern, problem.state_mass().raw());
  for (std::size_t q = 0; q < problem.op.terms(); ++q)
    term_values_.push_back(values_on_pattern(pattern, problem.op.component(q).raw()));
  step_factor_.analyze(step_);
  if (!problem.input_is_embedding) control_factor_.compute(problem.control_product().raw());
}

void FomSolver::factorize_step(int k) {
  const double dt = problem_->grid.dt();
  const double t = problem_->grid.time(k);
  Eigen::Map<Eigen::VectorXd> vals(step_.valuePtr(), step_.nonZeros());
  vals = mass_values_;
  for (std::size_t q = 0; q < term_values_.size(); ++q) vals += dt * problem_->op.coefficient(q, t) * term_values_[q];
  step_factor_.factorize(step_);
}

Vector FomSolver::observe(const Eigen::Ref<const Vector>& y) const {
  if (problem_->observation) return *problem_->observation * y;
  return y;
}

Vector FomSolver::observe_adjoint(const Vector& z) const {
  if (problem_->observation) return problem_->observation->transpose() * z;
  return z;
}

Trajectory FomSolver::solve_state(const Trajectory& u) {
  const auto& p = *problem_;
  PODOCP_REQUIRE(u.dim() == p.control_dim() && u.steps() == p.grid.steps(), ErrorKind::DimensionMismatch,
                 "control must have K slices of control dimension");
  const double dt = p.grid.dt();
  const auto& mass = p.state_mass().raw();
  const DenseMatrix load = dt * (p.input * u.values());
  Trajectory y(p.state_dim(), p.grid);
  Vector prev = p.y0;
  for (int k = 1; k <= p.grid.steps(); ++k) {
    factorize_step(k);
    Vector rhs = mass * prev + load.col(k - 1);
    prev = step_factor_.solve(rhs);
    y.slice(k - 1) = prev;
  }
  ++state_solves_;
  return y;
}

Trajectory FomSolver::solve_adjoint(const Trajectory& y) {
  const auto& p = *problem_;
  PODOCP_REQUIRE(y.dim() == p.state_dim() && y.steps() == p.grid.steps(), ErrorKind::DimensionMismatch,
                 "state must have K slices of state dimension");
  const double dt = p.grid.dt();
  const auto& mass = p.state_mass().raw();
  Trajectory adj(p.state_dim(), p.grid);
  Vector next = Vector::Zero(p.state_dim());
  for (int k = p.grid.steps(); k >= 1; --k) {
    factorize_step(k);
    const Vector misfit = observe(y.slice(k - 1)) - p.target.slice(k - 1);
    Vector rhs = mass * next + dt * observe_adjoint(mass * misfit);
    next = step_factor_.solve(rhs);
    adj.slice(k - 1) = next;
  }
  ++adjoint_solves_;
  return adj;
}

double FomSolver::cost(const Trajectory& u, const Trajectory& y) const {
  const auto& p = *problem_;
  PODOCP_REQUIRE(u.dim() == p.control_dim() && u.steps() == p.grid.steps(), ErrorKind::DimensionMismatch,
                 "cost: control has wrong shape");
  PODOCP_REQUIRE(y.dim() == p.state_dim() && y.steps() == p.grid.steps(), ErrorKind::DimensionMismatch,
                 "cost: state has wrong shape");
  double tracking = 0.0;
  for (int k = 0; k < p.grid.steps(); ++k) {
    const Vector misfit = observe(y.slice(k)) - p.target.slice(k);
    tracking += p.state_mass().quad(misfit);
  }
  const double control = space_time_inner(u.values(), u.values(), p.control_product(), 1.0);
  return p.grid.dt() * (0.5 * tracking + 0.5 * p.beta * control);
}

DenseMatrix FomSolver::riesz_input_adjoint(const DenseMatrix& dual) const {
  const auto& p = *problem_;
  if (p.input_is_embedding) return dual;
  return control_factor_.solve(DenseMatrix(p.input.transpose() * dual));
}

GradientResult FomSolver::gradient(const Trajectory& u) {
  Trajectory y = solve_state(u);
  Trajectory adj = solve_adjoint(y);
  const double j = cost(u, y);
  DenseMatrix g = problem_->beta * u.values() + riesz_input_adjoint(adj.values());
  return {Trajectory(std::move(g), problem_->grid), std::move(y), std::move(adj), j};
}

double reduced_cost(FomSolver& solver, const Trajectory& u) {
  const Trajectory y = solver.solve_state(u);
  return solver.cost(u, y);
}

Trajectory kkt_oracle(const OcpProblem& problem, Eigen::Index max_dim) {
  const Eigen::Index nu = problem.control_dim();
  const int steps = problem.grid.steps();
  const Eigen::Index n = nu * steps;
  PODOCP_REQUIRE(n <= max_dim, ErrorKind::TooLarge,
                 "KKT oracle limited to " + std::to_string(max_dim) + " control unknowns, got " + std::to_string(n));
  FomSolver solver(problem);
  const DenseMatrix g0 = solver.gradient(Trajectory::zeros(nu, problem.grid)).grad.values();

  // Columns of Q come from the homogeneous problem (y_d = 0, y₀ = 0), where
  // the gradient map is exactly linear and no offset has to be subtracted.
  OcpProblem homogeneous = problem;
  homogeneous.target = Trajectory::zeros(problem.state_dim(), problem.grid);
  homogeneous.y0 = Vector::Zero(problem.state_dim());
  FomSolver linear(homogeneous);
  DenseMatrix q(n, n);
  Trajectory unit = Trajectory::zeros(nu, problem.grid);
  for (Eigen::Index j = 0; j < n; ++j) {
    unit.values()(j % nu, j / nu) = 1.0;
    const DenseMatrix gj = linear.gradient(unit).grad.values();
    unit.values()(j % nu, j / nu) = 0.0;
    q.col(j) = Eigen::Map<const Vector>(gj.data(), n);
  }
  const Vector d = -Eigen::Map<const Vector>(g0.data(), n);
  const Vector u = q.partialPivLu().solve(d);
  return Trajectory(Eigen::Map<const DenseMatrix>(u.data(), nu, steps), problem.grid);
}

FomOcpResult solve_fom_ocp(FomSolver& solver, const BbConfig& cfg, const Trajectory& start) {
  const OcpProblem& problem = solver.problem();
  PODOCP_REQUIRE(start.dim() == problem.control_dim() && start.grid() == problem.grid, ErrorKind::DimensionMismatch,
                 "start control does not match the problem");
  const auto oracle = [&](const DenseMatrix& u) {
    GradientResult g = solver.gradient(Trajectory(u, problem.grid));
    return GradientEvaluation{std::move(g.grad.values()), g.cost};
  };
  const auto inner = [&](const DenseMatrix& a, const DenseMatrix& b) {
    return space_time_inner(a, b, problem.control_product(), problem.grid.dt());
  };
  BbResult res = bb_minimize(oracle, inner, start.values(), cfg);
  return {Trajectory(std::move(res.point), problem.grid), std::move(res.report)};
}

}  // namespace podocp
