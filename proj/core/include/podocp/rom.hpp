// Copyright 2026 The podocp Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include <Eigen/Cholesky>

#include "podocp/optimizer.hpp"
#include "podocp/pod.hpp"
#include "podocp/problem.hpp"

namespace podocp {

/// Galerkin projection of an OcpProblem onto V_r together with the
/// control space U_r induced by the optimality condition.
///
/// Control coefficients live in ℝ^{r_u} with the identity product because
/// the control basis is U-orthonormal (ÛᵀM_UÛ = I).
struct ReducedModel {
  PodBasis basis;
  TimeGrid grid;
  double beta = 1.0;

  DenseMatrix mass;                   // M̂ = V_rᵀM_HV_r
  std::vector<DenseMatrix> operator_terms;  // Â_q = V_rᵀA_qV_r
  Vector initial;                     // H-projection coefficients of y₀
  DenseMatrix tracking;               // V_rᵀCᵀM_HCV_r
  DenseMatrix target_load;            // columns V_rᵀCᵀM_H y_d,k
  Vector target_energy;               // y_d,kᵀM_H y_d,k

  DenseMatrix control_basis;          // Û, N_U × r_u
  DenseMatrix input;                  // B̂ = V_rᵀBÛ, r × r_u
  DenseMatrix input_projection;       // V_rᵀB, r × N_U (state-only solves)
  DenseMatrix adjoint_lift;           // M_U⁻¹BᵀV_r, N_U × r: raw control vectors uᵢ

  std::vector<Eigen::LLT<DenseMatrix>> step_factors;  // M̂ + Δt·Â(t_k), k = 1..K
  bool degenerate = false;  // singular M̂ or step matrix; reduced solves throw NotSpd

  [[nodiscard]] Eigen::Index rank() const noexcept { return basis.rank(); }
  [[nodiscard]] Eigen::Index control_rank() const noexcept { return control_basis.cols(); }
};

/// Projects the problem. Raw control vectors uᵢ = M_U⁻¹Bᵀvᵢ are
/// M_U-orthonormalized with relative drop tolerance drop_tol.
ReducedModel build_reduced(const OcpProblem& problem, const PodBasis& basis, double drop_tol = 1e-10);

/// (M̂ + ΔtÂ(t_k)) ŷ_k = M̂ŷ_{k−1} + Δt·B̂û_k from the reduced initial value.
Trajectory solve_reduced_state(const ReducedModel& rm, const Trajectory& coeffs);

/// Same recursion driven by a full-space control u (load Δt·V_rᵀBu_k).
Trajectory solve_reduced_state_full_control(const ReducedModel& rm, const Trajectory& u);

/// (M̂ + ΔtÂ(t_k)) p̂_k = M̂p̂_{k+1} + Δt·V_rᵀCᵀM_H(CV_rŷ_k − y_d,k), p̂_{K+1} = 0.
Trajectory solve_reduced_adjoint(const ReducedModel& rm, const Trajectory& y_hat);

/// Tracking part Δt·Σ_k ½‖CV_rŷ_k − y_d,k‖²_H.
double reduced_tracking(const ReducedModel& rm, const Trajectory& y_hat);

/// Ĵʳ at reduced control coefficients.
double reduced_objective(const ReducedModel& rm, const Trajectory& coeffs);

/// Û·û slice-wise.
Trajectory lift_control(const ReducedModel& rm, const Trajectory& coeffs);

/// M_U-orthogonal projection coefficients Ûᵀ M_U u.
Trajectory project_control(const ReducedModel& rm, const OcpProblem& problem, const Trajectory& u);

/// ‖V_r ŷ‖_{L²(0,T;H)} for reduced coefficient trajectories.
double reduced_state_norm(const ReducedModel& rm, const Trajectory& y_hat);

struct ReducedOcpResult {
  Trajectory controls;  // r_u coefficients (full) or N_U coefficients (state-only)
  Trajectory state;     // reduced coefficients ŷ at the returned control
  Trajectory adjoint;   // reduced coefficients p̂ at the returned control
  BbReport report;
};

/// Control- and state-reduced problem: BB entirely in ℝ^{r_u}, no full-order solves.
ReducedOcpResult solve_reduced_ocp_full(const ReducedModel& rm, const OcpProblem& problem, const BbConfig& cfg,
                                        const Trajectory& start);

/// State-reduced problem: BB over the full control space with reduced
/// state and adjoint solves; gradient β·u_k + M_U⁻¹BᵀV_r p̂_k.
ReducedOcpResult solve_reduced_ocp_state_only(const ReducedModel& rm, const OcpProblem& problem,
                                              const BbConfig& cfg, const Trajectory& start);

}  // namespace podocp
