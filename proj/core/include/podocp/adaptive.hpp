// Copyright 2026 The podocp Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "podocp/estimator.hpp"
#include "podocp/optimizer.hpp"

namespace podocp {

enum class RankMode {
  Energy,  // smallest r meeting the energy criterion
  Max,     // maximal numerical rank (energy_tol = 0)
};

enum class Reduction {
  ControlAndState,  // inner solve in ℝ^{r_u}
  StateOnly,        // inner solve over the full control space
};

struct AdaptiveConfig {
  /// Tolerance on the upper bound; the gradient tolerance is β·ε.
  double epsilon = 1e-6;
  int max_outer = 50;
  double energy_tol = 1e-12;
  RankMode rank_mode = RankMode::Energy;
  /// Inner BB settings; its tolerance is replaced by inner_tolerance_ratio·β·ε.
  BbConfig inner;
  double inner_tolerance_ratio = 1e-2;
  double drop_tol = 1e-10;
  bool record_history = true;

  /// Defaults for a gradient tolerance τ = β·ε, with inner initial step 1/β.
  static AdaptiveConfig for_gradient_tolerance(double beta, double gradient_tolerance);
  void validate() const;
};

struct AdaptiveRecord {
  int k = 0;
  double grad_norm = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  Eigen::Index r = 0;       // state basis size that produced u_k (0 for u₀)
  Eigen::Index r_u = 0;     // control basis size that produced u_k
  int inner_iters = 0;      // BB iterations of the reduced solve that produced u_k
  double wall_ms = 0.0;     // elapsed since the start of the run
  std::optional<double> true_error;
};

struct AdaptiveHistory {
  std::vector<AdaptiveRecord> records;

  /// Columns k,grad_norm,lower,upper,r,r_u,inner_iters,wall_ms[,true_error].
  void write_csv(std::ostream& out, bool include_wall_time = true) const;
};

struct AdaptiveResult {
  Trajectory u;
  AdaptiveHistory history;
  bool converged = false;
  int outer_iterations = 0;  // number of certified iterates u_0..u_k
  ErrorBounds final_bounds;
  std::size_t fom_state_solves = 0;
  std::size_t fom_adjoint_solves = 0;
  double wall_ms = 0.0;
};

/// Certified adaptive loop: estimate u_k with one full-order state and
/// adjoint solve; stop if the upper bound is ≤ ε; otherwise add y(u_k),
/// p(u_k) to the snapshots, rebuild V_r and U_r, and solve the reduced
/// problem warm-started from the projection of u_k.
///
/// A non-converged run (max_outer reached) returns converged = false.
AdaptiveResult run_adaptive(const OcpProblem& problem, const Trajectory& u0, const AdaptiveConfig& cfg,
                            const Trajectory* reference = nullptr,
                            Reduction reduction = Reduction::ControlAndState);

AdaptiveResult run_adaptive_state_only(const OcpProblem& problem, const Trajectory& u0, const AdaptiveConfig& cfg,
                                       const Trajectory* reference = nullptr);

}  // namespace podocp
