// Copyright 2026 The podocp Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>

#include "podocp/optimizer.hpp"
#include "podocp/problem.hpp"

namespace podocp {

struct GradientResult {
  Trajectory grad;  // U-Riesz representative of ∇Ĵ(u)
  Trajectory y;
  Trajectory p;
  double cost = 0.0;
};

/// Full-order implicit-Euler solver with its factorization workspace.
///
/// Holds a reference to the problem, which must outlive the solver. One
/// solver per thread; the problem itself may be shared.
class FomSolver {
public:
  explicit FomSolver(const OcpProblem& problem);

  [[nodiscard]] const OcpProblem& problem() const noexcept { return *problem_; }

  /// (M_H + Δt·A(t_k)) y_k = M_H y_{k−1} + Δt·B u_k,  k = 1..K.
  Trajectory solve_state(const Trajectory& u);

  /// Exact discrete adjoint of solve_state under the right-endpoint cost:
  /// (M_H + Δt·A(t_k)) p_k = M_H p_{k+1} + Δt·Cᵀ M_H (C y_k − y_d,k),  p_{K+1} = 0.
  Trajectory solve_adjoint(const Trajectory& y);

  [[nodiscard]] double cost(const Trajectory& u, const Trajectory& y) const;

  /// β·u_k + M_U⁻¹Bᵀp_k with the state and adjoint used to compute it.
  GradientResult gradient(const Trajectory& u);

  /// M_U⁻¹Bᵀ applied slice-wise.
  [[nodiscard]] DenseMatrix riesz_input_adjoint(const DenseMatrix& dual) const;

  [[nodiscard]] std::size_t state_solves() const noexcept { return state_solves_; }
  [[nodiscard]] std::size_t adjoint_solves() const noexcept { return adjoint_solves_; }
  void reset_counters() noexcept { state_solves_ = adjoint_solves_ = 0; }

private:
  void factorize_step(int k);
  [[nodiscard]] Vector observe(const Eigen::Ref<const Vector>& y) const;
  [[nodiscard]] Vector observe_adjoint(const Vector& z) const;

  const OcpProblem* problem_;
  SparseMatrix step_;                        // union pattern of M_H and all A_q
  Eigen::VectorXd mass_values_;              // M_H on that pattern
  std::vector<Eigen::VectorXd> term_values_; // A_q on that pattern
  SpdFactorization step_factor_;
  SpdFactorization control_factor_;
  std::size_t state_solves_ = 0;
  std::size_t adjoint_solves_ = 0;
};

/// Full-order reduced cost Ĵ(u) = J(y(u), u).
double reduced_cost(FomSolver& solver, const Trajectory& u);

/// Dense brute-force minimizer: assembles Q = βI + 𝒮′C′C𝒮 column by column
/// from gradient differences and solves Q ū = d. Guarded to K·N_U ≤ max_dim.
Trajectory kkt_oracle(const OcpProblem& problem, Eigen::Index max_dim = 5000);

struct FomOcpResult {
  Trajectory u;
  BbReport report;
};

/// Barzilai–Borwein on Ĵ in L²(0,T;U); each iteration costs one state and one adjoint solve.
FomOcpResult solve_fom_ocp(FomSolver& solver, const BbConfig& cfg, const Trajectory& start);

}  // namespace podocp
