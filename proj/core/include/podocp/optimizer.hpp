// Copyright 2026 The podocp Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "podocp/numerics.hpp"

namespace podocp {

enum class BbRule { Alternating, Long, Short };

struct BbConfig {
  double tolerance = 1e-8;
  int max_iters = 10000;
  double initial_step = 1.0;
  double step_min = 1e-12;
  double step_max = 1e12;
  BbRule rule = BbRule::Alternating;

  /// Initial step 1/β, the inverse of the smallest eigenvalue scale of Q.
  static BbConfig for_beta(double beta, double tolerance, int max_iters = 10000);
  void validate() const;
};

struct BbReport {
  int iterations = 0;
  double grad_norm = std::numeric_limits<double>::infinity();
  std::vector<double> cost_history;
  bool converged = false;
  int stagnations = 0;  // steps where ⟨s, Δg⟩ ≤ 0 forced a reset to the initial step
};

struct GradientEvaluation {
  DenseMatrix gradient;
  double cost = std::numeric_limits<double>::quiet_NaN();
};

using GradientOracle = std::function<GradientEvaluation(const DenseMatrix&)>;
using InnerProduct = std::function<double(const DenseMatrix&, const DenseMatrix&)>;

struct BbResult {
  DenseMatrix point;
  BbReport report;
};

/// Barzilai–Borwein gradient descent without line search.
///
/// Step sizes alternate between ⟨s,s⟩/⟨s,Δg⟩ and ⟨s,Δg⟩/⟨Δg,Δg⟩ (clamped to
/// [step_min, step_max]); the first step uses initial_step. Stops once the
/// gradient norm in `inner` is ≤ tolerance or after max_iters steps.
BbResult bb_minimize(const GradientOracle& oracle, const InnerProduct& inner, DenseMatrix start,
                     const BbConfig& cfg);

}  // namespace podocp
