// Copyright 2026 The podocp Authors.
// SPDX-License-Identifier: Apache-2.0

#include <exception>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "podocp_cli/commands.hpp"

namespace cli = podocp::cli;

int main(int argc, char** argv) {
  CLI::App app{"Adaptive POD optimization for parabolic optimal control"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string out_dir;
  std::string beta_list;
  bool full_scale = false;
  bool zero_target = false;
  app.add_option("--config", config_path, "flat key = value configuration file");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--beta", beta_list, "comma-separated regularization parameters (overrides config)");
  app.add_flag("--paper-scale", full_scale, "use 101 nodes per side and 100 time steps");
  app.add_flag("--zero-target", zero_target, "replace the tracking target by zero");

  using Command = std::function<int(const cli::RunConfig&, std::ostream&)>;
  Command command;
  const auto sub = [&](const char* name, const char* help, Command fn) {
    app.add_subcommand(name, help)->callback([&command, fn] { command = fn; });
  };
  sub("solve-fom", "full-order Barzilai-Borwein solve", cli::cmd_solve_fom);
  sub("table1", "state-reduced vs control-and-state-reduced comparison", cli::cmd_table1);
  sub("table2", "FOM vs adaptive ROM vs adaptive Full-ROM", cli::cmd_table2);
  sub("history", "per-iteration error bounds and basis sizes", cli::cmd_history);
  sub("selftest", "small-instance oracle checks", cli::cmd_selftest);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kExitOk : cli::kExitConfigError;
  }

  cli::RunConfig cfg;
  try {
    if (!config_path.empty()) cfg = cli::load_config(config_path);
    if (full_scale) {
      cfg.nodes_per_side = cli::kFullScaleNodesPerSide;
      cfg.time_steps = cli::kFullScaleTimeSteps;
    }
    if (!beta_list.empty()) cfg.betas = cli::parse_list(beta_list);
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    if (zero_target) cfg.zero_target = true;
    cfg.validate();
  } catch (const cli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return cli::kExitConfigError;
  }

  try {
    return command(cfg, std::cout);
  } catch (const podocp::Error& e) {
    std::cerr << "solver failure [" << podocp::to_string(e.kind()) << "]: " << e.what() << '\n';
    return cli::kExitSolverFailure;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << '\n';
    return cli::kExitSolverFailure;
  }
}
