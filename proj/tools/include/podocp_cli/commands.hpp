// Copyright 2026 The podocp Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>

#include "podocp/problem.hpp"
#include "podocp_cli/config.hpp"

namespace podocp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitSolverFailure = 2;
inline constexpr int kExitConfigError = 3;

/// Model problem for one β of the sweep, with the target zeroed when requested.
OcpProblem make_problem(const RunConfig& cfg, double beta);

/// File-name fragment for β, e.g. 0.001 → "0.001", 1e-05 → "1e-05".
std::string beta_tag(double beta);

// Each command writes its artifacts below cfg.output_dir, logs progress to
// `log`, and returns a process exit code.
int cmd_solve_fom(const RunConfig& cfg, std::ostream& log);
int cmd_table1(const RunConfig& cfg, std::ostream& log);
int cmd_table2(const RunConfig& cfg, std::ostream& log);
int cmd_history(const RunConfig& cfg, std::ostream& log);
int cmd_selftest(const RunConfig& cfg, std::ostream& log);

}  // namespace podocp::cli
