// Copyright 2026 The podocp Authors.
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "podocp/adaptive.hpp"

namespace {

using namespace podocp;

void BM_FomGradient(benchmark::State& state) {
  const OcpProblem prob = model_problem(static_cast<int>(state.range(0)), 50, 1e-2);
  FomSolver fom(prob);
  const Trajectory u = Trajectory::zeros(prob.control_dim(), prob.grid);
  for (auto _ : state) benchmark::DoNotOptimize(fom.gradient(u).cost);
  state.SetLabel("N=" + std::to_string(prob.state_dim()));
}
BENCHMARK(BM_FomGradient)->Arg(17)->Arg(33)->Unit(benchmark::kMillisecond);

struct Fixture {
  OcpProblem prob = model_problem(33, 50, 1e-2);
  SnapshotSet snapshots{prob.state_dim(), prob.grid};
  Fixture() {
    FomSolver fom(prob);
    const GradientResult g = fom.gradient(Trajectory::zeros(prob.control_dim(), prob.grid));
    snapshots.add(g.y);
    snapshots.add(g.p);
  }
};

const Fixture& fixture() {
  static const Fixture f;
  return f;
}

void BM_Pod(benchmark::State& state) {
  const Fixture& f = fixture();
  for (auto _ : state) benchmark::DoNotOptimize(compute_pod(f.snapshots, f.prob.v_product(), f.prob.grid, 1e-12));
}
BENCHMARK(BM_Pod)->Unit(benchmark::kMillisecond);

void BM_BuildReduced(benchmark::State& state) {
  const Fixture& f = fixture();
  const PodBasis basis = compute_pod(f.snapshots, f.prob.v_product(), f.prob.grid, 1e-12);
  for (auto _ : state) benchmark::DoNotOptimize(build_reduced(f.prob, basis).rank());
}
BENCHMARK(BM_BuildReduced)->Unit(benchmark::kMillisecond);

void BM_ReducedSolve(benchmark::State& state) {
  const Fixture& f = fixture();
  const ReducedModel rm = build_reduced(f.prob, compute_pod(f.snapshots, f.prob.v_product(), f.prob.grid, 1e-12));
  const BbConfig cfg = BbConfig::for_beta(f.prob.beta, 1e-10);
  const bool full = state.range(0) == 1;
  for (auto _ : state) {
    const ReducedOcpResult res =
        full ? solve_reduced_ocp_full(rm, f.prob, cfg, Trajectory::zeros(rm.control_rank(), f.prob.grid))
             : solve_reduced_ocp_state_only(rm, f.prob, cfg, Trajectory::zeros(f.prob.control_dim(), f.prob.grid));
    benchmark::DoNotOptimize(res.report.iterations);
  }
  state.SetLabel(full ? "control-and-state" : "state-only");
}
BENCHMARK(BM_ReducedSolve)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
