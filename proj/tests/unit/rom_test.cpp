// Copyright 2026 The podocp Authors.
// SPDX-License-Identifier: Apache-2.0

#include "test_support.hpp"

namespace podocp {
namespace {

using testing::random_trajectory;

PodBasis initial_basis(const OcpProblem& prob, double energy_tol = 1e-12) {
  FomSolver fom(prob);
  const GradientResult g = fom.gradient(Trajectory::zeros(prob.control_dim(), prob.grid));
  SnapshotSet s(prob.state_dim(), prob.grid);
  s.add(g.y);
  s.add(g.p);
  return compute_pod(s, prob.v_product(), prob.grid, energy_tol);
}

OcpProblem zero_target(OcpProblem p) {
  p.target.values().setZero();
  return p;
}

// Reduced gradient βc + B̂ᵀp̂ built from the public reduced solvers.
DenseMatrix reduced_gradient(const ReducedModel& rm, const DenseMatrix& c) {
  const Trajectory y = solve_reduced_state(rm, Trajectory(c, rm.grid));
  return rm.beta * c + rm.input.transpose() * solve_reduced_adjoint(rm, y).values();
}

TEST(BuildReducedTest, ModelProblemControlBasisMatchesStateBasis) {
  const OcpProblem prob = model_problem(9, 10, 1e-2);
  const ReducedModel rm = build_reduced(prob, initial_basis(prob));
  EXPECT_EQ(rm.control_rank(), rm.rank());
  const DenseMatrix& v = rm.basis.modes;
  const DenseMatrix coeff = v.colPivHouseholderQr().solve(rm.control_basis);
  EXPECT_LE((v * coeff - rm.control_basis).norm(), 1e-10 * rm.control_basis.norm());
}

TEST(BuildReducedTest, Invariants) {
  const OcpProblem prob = model_problem(9, 10, 1e-2);
  const ReducedModel rm = build_reduced(prob, initial_basis(prob));
  const DenseMatrix& u = rm.control_basis;
  const DenseMatrix gram = u.transpose() * (prob.control_product().raw() * u);
  EXPECT_LE((gram - DenseMatrix::Identity(u.cols(), u.cols())).cwiseAbs().maxCoeff(), 1e-10);
  for (const auto& a : rm.operator_terms) EXPECT_EQ(a, a.transpose());
  EXPECT_EQ(rm.mass, rm.mass.transpose());
  EXPECT_LE(rm.control_rank(), rm.rank());
  EXPECT_FALSE(rm.degenerate);
}

TEST(BuildReducedTest, DuplicatedModeDropsOneControlDirection) {
  const OcpProblem prob = model_problem(9, 10, 1e-2);
  PodBasis b = initial_basis(prob);
  const Eigen::Index r = b.rank();
  b.modes.conservativeResize(Eigen::NoChange, r + 1);
  b.modes.col(r) = b.modes.col(0);
  const ReducedModel rm = build_reduced(prob, b);
  EXPECT_EQ(rm.rank(), r + 1);
  EXPECT_EQ(rm.control_rank(), rm.rank() - 1);
  EXPECT_TRUE(rm.degenerate);
  EXPECT_PODOCP_ERROR(solve_reduced_state(rm, Trajectory::zeros(rm.control_rank(), prob.grid)), ErrorKind::NotSpd);
}

TEST(BuildReducedTest, SingleModeNormalization) {
  const OcpProblem prob = model_problem(5, 4, 1e-2);
  const PodBasis b = initial_basis(prob);
  PodBasis one = b;
  one.modes = b.modes.leftCols(1);
  const ReducedModel rm = build_reduced(prob, one);
  const Vector v = one.modes.col(0);
  EXPECT_LE((rm.control_basis.col(0) - v / std::sqrt(prob.control_product().quad(v))).norm(), 1e-14);
}

TEST(BuildReducedTest, Errors) {
  const OcpProblem prob = model_problem(5, 4, 1e-2);
  PodBasis empty;
  empty.modes = DenseMatrix(prob.state_dim(), 0);
  EXPECT_PODOCP_ERROR(build_reduced(prob, empty), ErrorKind::InvalidArgument);
  PodBasis wrong;
  wrong.modes = DenseMatrix::Identity(3, 1);
  EXPECT_PODOCP_ERROR(build_reduced(prob, wrong), ErrorKind::DimensionMismatch);
  PodBasis zero;
  zero.modes = DenseMatrix::Zero(prob.state_dim(), 2);
  EXPECT_PODOCP_ERROR(build_reduced(prob, zero), ErrorKind::EmptyOutput);
}

TEST(ReducedStateTest, ZeroControlZeroInitial) {
  const OcpProblem prob = model_problem(9, 10, 1e-2);
  const ReducedModel rm = build_reduced(prob, initial_basis(prob));
  EXPECT_TRUE(solve_reduced_state(rm, Trajectory::zeros(rm.control_rank(), prob.grid)).values().isZero());
}

TEST(ReducedStateTest, ExactWhenTrajectoryLiesInBasis) {
  // Constants are eigenfunctions of the model operator, so a spatially
  // constant control keeps the state in span{1}.
  const OcpProblem prob = model_problem(9, 10, 1e-2);
  Trajectory u(prob.control_dim(), prob.grid);
  for (int k = 0; k < prob.grid.steps(); ++k) u.slice(k).setConstant(std::cos(3.0 * k));
  FomSolver fom(prob);
  const Trajectory y = fom.solve_state(u);
  SnapshotSet s(prob.state_dim(), prob.grid);
  s.add(y);
  const ReducedModel rm = build_reduced(prob, compute_pod(s, prob.v_product(), prob.grid, 0.0));
  ASSERT_EQ(rm.rank(), 1);
  const Trajectory c = project_control(rm, prob, u);
  EXPECT_LE((lift_control(rm, c).values() - u.values()).norm(), 1e-12 * u.values().norm());
  const DenseMatrix lifted = rm.basis.modes * solve_reduced_state(rm, c).values();
  EXPECT_LE((lifted - y.values()).norm(), 1e-12 * y.values().norm());
}

TEST(ReducedStateTest, MatchesDenseRecursion) {
  std::mt19937_64 rng(41);
  OcpProblem prob = model_problem(9, 10, 1e-2);
  prob.y0 = testing::random_vector(rng, prob.state_dim());
  PodBasis b = initial_basis(prob);
  b.modes = b.modes.leftCols(3).eval();
  const ReducedModel rm = build_reduced(prob, b);
  const Trajectory c = random_trajectory(rng, rm.control_rank(), prob.grid);

  const DenseMatrix& v = b.modes;
  const DenseMatrix m = v.transpose() * (prob.state_mass().raw() * v);
  Vector y = m.inverse() * (v.transpose() * (prob.state_mass().raw() * prob.y0));
  const Trajectory yhat = solve_reduced_state(rm, c);
  for (int k = 0; k < prob.grid.steps(); ++k) {
    const DenseMatrix a = v.transpose() * (prob.op.evaluate(prob.grid.time(k + 1)) * v);
    const DenseMatrix b_hat = v.transpose() * (prob.input * rm.control_basis);
    y = (m + prob.grid.dt() * a).inverse() * (m * y + prob.grid.dt() * b_hat * c.slice(k));
    EXPECT_LE((yhat.slice(k) - y).norm(), 1e-12 * y.norm()) << k;
  }
}

TEST(ReducedAdjointTest, DiscreteDuality) {
  std::mt19937_64 rng(42);
  OcpProblem prob = zero_target(model_problem(9, 10, 1e-2));
  const ReducedModel rm = build_reduced(prob, initial_basis(model_problem(9, 10, 1e-2)));
  const Trajectory a = random_trajectory(rng, rm.control_rank(), prob.grid);
  const Trajectory w = random_trajectory(rng, rm.control_rank(), prob.grid);
  const Trajectory ya = solve_reduced_state(rm, a);
  const Trajectory yw = solve_reduced_state(rm, w);
  const Trajectory pw = solve_reduced_adjoint(rm, yw);
  const double dt = prob.grid.dt();
  const double lhs = dt * (rm.input * a.values()).cwiseProduct(pw.values()).sum();
  const double rhs = dt * ya.values().cwiseProduct(rm.tracking * yw.values()).sum();
  EXPECT_NEAR(lhs, rhs, 1e-10 * std::abs(rhs));
}

TEST(ReducedOcpTest, ZeroTargetGivesZeroControl) {
  const OcpProblem base = model_problem(9, 10, 1e-2);
  const OcpProblem prob = zero_target(base);
  const ReducedModel rm = build_reduced(prob, initial_basis(base));
  const BbConfig cfg = BbConfig::for_beta(prob.beta, 1e-12);
  const auto full = solve_reduced_ocp_full(rm, prob, cfg, Trajectory::zeros(rm.control_rank(), prob.grid));
  EXPECT_TRUE(full.controls.values().isZero());
  EXPECT_LE(full.report.iterations, 1);
  const auto half = solve_reduced_ocp_state_only(rm, prob, cfg, Trajectory::zeros(prob.control_dim(), prob.grid));
  EXPECT_TRUE(half.controls.values().isZero());
}

TEST(ReducedOcpTest, MatchesDenseReducedKkt) {
  const OcpProblem prob = model_problem(5, 4, 1e-2);
  PodBasis b = initial_basis(prob);
  b.modes = b.modes.leftCols(std::min<Eigen::Index>(4, b.rank())).eval();
  const ReducedModel rm = build_reduced(prob, b);
  const Eigen::Index n = rm.control_rank() * prob.grid.steps();
  const DenseMatrix g0 = reduced_gradient(rm, DenseMatrix::Zero(rm.control_rank(), prob.grid.steps()));
  // Columns of the reduced Hessian from differences of the affine gradient map.
  DenseMatrix q(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    DenseMatrix e = DenseMatrix::Zero(rm.control_rank(), prob.grid.steps());
    e.data()[j] = 1.0;
    q.col(j) = (reduced_gradient(rm, e) - g0).reshaped();
  }
  const Vector c = q.fullPivLu().solve(-g0.reshaped().eval());
  const auto res = solve_reduced_ocp_full(rm, prob, BbConfig::for_beta(prob.beta, 1e-13),
                                          Trajectory::zeros(rm.control_rank(), prob.grid));
  ASSERT_TRUE(res.report.converged);
  EXPECT_LE((res.controls.values().reshaped() - c).norm() * std::sqrt(prob.grid.dt()), 1e-8);
}

TEST(ReducedOcpTest, StateOnlyAndFullReductionAgree) {
  for (double beta : {1e-1, 1e-2, 1e-3}) {
    const OcpProblem prob = model_problem(17, 20, beta);
    const ReducedModel rm = build_reduced(prob, initial_basis(prob));
    const BbConfig cfg = BbConfig::for_beta(beta, 1e-12);
    const auto full = solve_reduced_ocp_full(rm, prob, cfg, Trajectory::zeros(rm.control_rank(), prob.grid));
    const auto half = solve_reduced_ocp_state_only(rm, prob, cfg, Trajectory::zeros(prob.control_dim(), prob.grid));
    ASSERT_TRUE(full.report.converged && half.report.converged);
    const double norm = space_time_norm(half.controls, prob.control_product());
    EXPECT_LE(true_error(lift_control(rm, full.controls), half.controls, prob.control_product(), prob.grid),
              1e-8 * (1 + norm))
        << beta;
  }
}

TEST(ReducedOcpTest, ReproducesFomOptimumWhenSnapshotsAreExact) {
  const OcpProblem prob = model_problem(5, 4, 1e-1);
  const Trajectory u_bar = kkt_oracle(prob);
  FomSolver fom(prob);
  const GradientResult g = fom.gradient(u_bar);
  SnapshotSet s(prob.state_dim(), prob.grid);
  s.add(g.y);
  s.add(g.p);
  const ReducedModel rm = build_reduced(prob, compute_pod(s, prob.v_product(), prob.grid, 0.0));
  const auto res = solve_reduced_ocp_full(rm, prob, BbConfig::for_beta(prob.beta, 1e-13),
                                          Trajectory::zeros(rm.control_rank(), prob.grid));
  EXPECT_LE(true_error(lift_control(rm, res.controls), u_bar, prob.control_product(), prob.grid), 1e-8);
}

TEST(ReducedOcpTest, ProjectionInvertsLift) {
  std::mt19937_64 rng(43);
  const OcpProblem prob = model_problem(9, 10, 1e-2);
  const ReducedModel rm = build_reduced(prob, initial_basis(prob));
  const Trajectory c = random_trajectory(rng, rm.control_rank(), prob.grid);
  EXPECT_LE((project_control(rm, prob, lift_control(rm, c)).values() - c.values()).norm(), 1e-10 * c.values().norm());
}

TEST(ReducedOcpTest, ShapeAndConsistencyErrors) {
  const OcpProblem prob = model_problem(5, 4, 1e-2);
  const ReducedModel rm = build_reduced(prob, initial_basis(prob));
  const BbConfig cfg = BbConfig::for_beta(prob.beta, 1e-8);
  EXPECT_PODOCP_ERROR(solve_reduced_ocp_full(rm, prob, cfg, Trajectory::zeros(rm.control_rank() + 1, prob.grid)),
                      ErrorKind::DimensionMismatch);
  EXPECT_PODOCP_ERROR(solve_reduced_ocp_state_only(rm, prob, cfg, Trajectory::zeros(2, prob.grid)),
                      ErrorKind::DimensionMismatch);
  const OcpProblem other = model_problem(5, 4, 2e-2);
  EXPECT_PODOCP_ERROR(solve_reduced_ocp_full(rm, other, cfg, Trajectory::zeros(rm.control_rank(), prob.grid)),
                      ErrorKind::DimensionMismatch);
  EXPECT_PODOCP_ERROR(solve_reduced_adjoint(rm, Trajectory::zeros(rm.rank() + 1, prob.grid)),
                      ErrorKind::DimensionMismatch);
}

}  // namespace
}  // namespace podocp
