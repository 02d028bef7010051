// Copyright 2026 The podocp Authors.
// SPDX-License-Identifier: Apache-2.0

#include "podocp/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

namespace podocp {

BbConfig BbConfig::for_beta(double beta, double tolerance, int max_iters) {
  PODOCP_REQUIRE(beta > 0.0, ErrorKind::InvalidArgument, "beta must be positive");
  BbConfig cfg;
  cfg.tolerance = tolerance;
  cfg.max_iters = max_iters;
  cfg.initial_step = std::clamp(1.0 / beta, cfg.step_min, cfg.step_max);
  return cfg;
}

void BbConfig::validate() const {
  PODOCP_REQUIRE(tolerance > 0.0, ErrorKind::InvalidArgument, "BB tolerance must be positive");
  PODOCP_REQUIRE(max_iters >= 0, ErrorKind::InvalidArgument, "BB max_iters must be non-negative");
  PODOCP_REQUIRE(step_min > 0.0 && step_min <= initial_step && initial_step <= step_max,
                 ErrorKind::InvalidArgument, "BB initial step outside [step_min, step_max]");
}

namespace {

GradientEvaluation evaluate(const GradientOracle& oracle, const DenseMatrix& x) {
  GradientEvaluation g;
  try {
    g = oracle(x);
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(ErrorKind::OracleFailure, e.what());
  }
  PODOCP_REQUIRE(g.gradient.rows() == x.rows() && g.gradient.cols() == x.cols(), ErrorKind::OracleFailure,
                 "gradient oracle returned a wrongly shaped gradient");
  PODOCP_REQUIRE(g.gradient.allFinite(), ErrorKind::OracleFailure, "gradient oracle returned non-finite values");
  return g;
}

}  // namespace

BbResult bb_minimize(const GradientOracle& oracle, const InnerProduct& inner, DenseMatrix start,
                     const BbConfig& cfg) {
  cfg.validate();
  BbResult out{std::move(start), {}};
  auto& rep = out.report;

  GradientEvaluation g = evaluate(oracle, out.point);
  rep.cost_history.push_back(g.cost);
  rep.grad_norm = std::sqrt(std::max(inner(g.gradient, g.gradient), 0.0));
  double step = cfg.initial_step;

  while (rep.grad_norm > cfg.tolerance && rep.iterations < cfg.max_iters) {
    const DenseMatrix s = -step * g.gradient;
    out.point += s;
    GradientEvaluation next = evaluate(oracle, out.point);
    const DenseMatrix dg = next.gradient - g.gradient;
    g = std::move(next);
    ++rep.iterations;
    rep.cost_history.push_back(g.cost);
    rep.grad_norm = std::sqrt(std::max(inner(g.gradient, g.gradient), 0.0));

    const double sy = inner(s, dg);
    if (!(sy > 0.0)) {
      ++rep.stagnations;
      step = cfg.initial_step;
      continue;
    }
    const bool use_long = cfg.rule == BbRule::Long || (cfg.rule == BbRule::Alternating && rep.iterations % 2 == 1);
    const double candidate = use_long ? inner(s, s) / sy : sy / inner(dg, dg);
    step = std::isfinite(candidate) ? std::clamp(candidate, cfg.step_min, cfg.step_max) : cfg.initial_step;
  }
  rep.converged = rep.grad_norm <= cfg.tolerance;
  return out;
}

}  // namespace podocp
