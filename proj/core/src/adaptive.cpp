// Copyright 2026 The podocp Authors.
// SPDX-License-Identifier: Apache-2.0

#include "podocp/adaptive.hpp"

#include <chrono>
#include <ostream>

#include "podocp/csv.hpp"
#include "podocp/pod.hpp"
#include "podocp/rom.hpp"

namespace podocp {

AdaptiveConfig AdaptiveConfig::for_gradient_tolerance(double beta, double gradient_tolerance) {
  AdaptiveConfig cfg;
  cfg.epsilon = gradient_tolerance / beta;
  cfg.inner = BbConfig::for_beta(beta, gradient_tolerance);
  return cfg;
}

void AdaptiveConfig::validate() const {
  PODOCP_REQUIRE(epsilon >= 0.0, ErrorKind::InvalidArgument, "epsilon must be non-negative");
  PODOCP_REQUIRE(max_outer >= 1, ErrorKind::InvalidArgument, "max_outer must be at least 1");
  PODOCP_REQUIRE(energy_tol >= 0.0 && energy_tol < 1.0, ErrorKind::InvalidArgument, "energy_tol must lie in [0,1)");
  PODOCP_REQUIRE(inner_tolerance_ratio > 0.0 && inner_tolerance_ratio <= 1.0, ErrorKind::InvalidArgument,
                 "inner_tolerance_ratio must lie in (0,1]");
}

void AdaptiveHistory::write_csv(std::ostream& out, bool include_wall_time) const {
  const bool with_truth = !records.empty() && records.front().true_error.has_value();
  out << "k,grad_norm,lower,upper,r,r_u,inner_iters";
  if (include_wall_time) out << ",wall_ms";
  if (with_truth) out << ",true_error";
  out << '\n';
  for (const auto& rec : records) {
    csv::Row row;
    row.add(rec.k).add(rec.grad_norm).add(rec.lower).add(rec.upper);
    row.add(static_cast<long long>(rec.r)).add(static_cast<long long>(rec.r_u)).add(rec.inner_iters);
    if (include_wall_time) row.add(rec.wall_ms);
    if (with_truth) row.add(rec.true_error.value_or(0.0));
    row.write(out);
  }
}

AdaptiveResult run_adaptive(const OcpProblem& problem, const Trajectory& u0, const AdaptiveConfig& cfg,
                            const Trajectory* reference, Reduction reduction) {
  cfg.validate();
  PODOCP_REQUIRE(u0.dim() == problem.control_dim() && u0.grid() == problem.grid, ErrorKind::DimensionMismatch,
                 "initial control must have K slices of control dimension");
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  const auto elapsed_ms = [&] { return std::chrono::duration<double, std::milli>(clock::now() - start).count(); };

  BbConfig inner = cfg.inner;
  inner.tolerance = cfg.inner_tolerance_ratio * problem.beta * cfg.epsilon;
  if (!(inner.tolerance > 0.0)) inner.tolerance = std::numeric_limits<double>::min();
  const double energy_tol = cfg.rank_mode == RankMode::Max ? 0.0 : cfg.energy_tol;

  FomSolver fom(problem);
  SnapshotSet snapshots(problem.state_dim(), problem.grid);
  AdaptiveResult out;
  out.u = u0;
  Eigen::Index r = 0;
  Eigen::Index r_u = 0;
  int inner_iters = 0;

  for (int k = 0;; ++k) {
    Estimate est = estimate(fom, out.u);
    out.final_bounds = est.bounds;
    out.outer_iterations = k + 1;
    if (reference != nullptr)
      out.final_bounds.true_error = true_error(out.u, *reference, problem.control_product(), problem.grid);
    if (cfg.record_history) {
      out.history.records.push_back({k, est.bounds.grad_norm, est.bounds.lower, est.bounds.upper, r, r_u, inner_iters,
                                     elapsed_ms(), out.final_bounds.true_error});
    }
    if (est.bounds.upper <= cfg.epsilon) {
      out.converged = true;
      break;
    }
    if (k + 1 >= cfg.max_outer) break;

    snapshots.add(est.y, "y" + std::to_string(k));
    snapshots.add(est.p, "p" + std::to_string(k));
    const PodBasis basis = compute_pod(snapshots, problem.v_product(), problem.grid, energy_tol);
    const ReducedModel rm = build_reduced(problem, basis, cfg.drop_tol);
    const Trajectory warm = project_control(rm, problem, out.u);

    if (reduction == Reduction::ControlAndState) {
      ReducedOcpResult res = solve_reduced_ocp_full(rm, problem, inner, warm);
      out.u = lift_control(rm, res.controls);
      inner_iters = res.report.iterations;
    } else {
      ReducedOcpResult res = solve_reduced_ocp_state_only(rm, problem, inner, lift_control(rm, warm));
      out.u = std::move(res.controls);
      inner_iters = res.report.iterations;
    }
    r = rm.rank();
    r_u = rm.control_rank();
  }

  out.fom_state_solves = fom.state_solves();
  out.fom_adjoint_solves = fom.adjoint_solves();
  out.wall_ms = elapsed_ms();
  return out;
}

AdaptiveResult run_adaptive_state_only(const OcpProblem& problem, const Trajectory& u0, const AdaptiveConfig& cfg,
                                       const Trajectory* reference) {
  return run_adaptive(problem, u0, cfg, reference, Reduction::StateOnly);
}

}  // namespace podocp
