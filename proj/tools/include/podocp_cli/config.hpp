// Copyright 2026 The podocp Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "podocp/adaptive.hpp"

namespace podocp::cli {

/// Raised for malformed or out-of-range configuration; maps to exit code 3.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  int nodes_per_side = 33;
  int time_steps = 50;
  double horizon = 1.0;
  std::vector<double> betas{1e-1, 1e-2, 1e-3};
  double tolerance = 1e-8;            // gradient tolerance τ = βε
  double fixed_basis_tolerance = 1e-12;  // inner tolerance of the fixed-basis comparison
  double reference_tolerance = 1e-12;
  double energy_tol = 1e-12;
  int max_iters = 10000;
  int max_outer = 50;
  std::string output_dir = ".";
  std::uint64_t seed = 42;
  RankMode rank_mode = RankMode::Energy;
  bool zero_target = false;

  void validate() const;
  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

inline constexpr int kFullScaleNodesPerSide = 101;
inline constexpr int kFullScaleTimeSteps = 100;

/// Grammar: one `key = value` per line, key in [a-z_]+, `#` starts a comment,
/// lists are comma-separated. Unknown keys are rejected.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);
std::string serialize_config(const RunConfig& cfg);

std::vector<double> parse_list(std::string_view text);
std::string_view to_string(RankMode mode) noexcept;

}  // namespace podocp::cli
