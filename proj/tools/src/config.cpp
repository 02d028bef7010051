// Copyright 2026 The podocp Authors.
// SPDX-License-Identifier: Apache-2.0

#include "podocp_cli/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace podocp::cli {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool valid_key(std::string_view key) {
  if (key.empty()) return false;
  for (char c : key)
    if (!((c >= 'a' && c <= 'z') || c == '_')) return false;
  return true;
}

double parse_double(std::string_view text, std::string_view key) {
  const std::string s(trim(text));
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(value))
    throw ConfigError("invalid number for '" + std::string(key) + "': '" + s + "'");
  return value;
}

template <typename Int>
Int parse_int(std::string_view text, std::string_view key) {
  const std::string s(trim(text));
  Int value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw ConfigError("invalid integer for '" + std::string(key) + "': '" + s + "'");
  return value;
}

bool parse_bool(std::string_view text, std::string_view key) {
  const auto s = trim(text);
  if (s == "1" || s == "true") return true;
  if (s == "0" || s == "false") return false;
  throw ConfigError("invalid boolean for '" + std::string(key) + "': '" + std::string(s) + "'");
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string_view to_string(RankMode mode) noexcept { return mode == RankMode::Max ? "max" : "energy"; }

std::vector<double> parse_list(std::string_view text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const auto item = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    out.push_back(parse_double(item, "list"));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

void RunConfig::validate() const {
  if (nodes_per_side < 2) throw ConfigError("nodes_per_side must be at least 2");
  if (time_steps < 1) throw ConfigError("time_steps must be at least 1");
  if (!(horizon > 0.0)) throw ConfigError("horizon must be positive");
  if (betas.empty()) throw ConfigError("betas must be nonempty");
  for (double b : betas)
    if (!(b > 0.0)) throw ConfigError("every beta must be positive");
  if (!(tolerance > 0.0)) throw ConfigError("tolerance must be positive");
  if (!(fixed_basis_tolerance > 0.0)) throw ConfigError("fixed_basis_tolerance must be positive");
  if (!(reference_tolerance > 0.0)) throw ConfigError("reference_tolerance must be positive");
  if (!(energy_tol >= 0.0 && energy_tol < 1.0)) throw ConfigError("energy_tol must lie in [0,1)");
  if (max_iters < 1) throw ConfigError("max_iters must be positive");
  if (max_outer < 1) throw ConfigError("max_outer must be positive");
  if (output_dir.empty()) throw ConfigError("output_dir must be nonempty");
}

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() : eol + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (!valid_key(key)) throw ConfigError("line " + std::to_string(line_no) + ": invalid key '" + std::string(key) + "'");

    if (key == "nodes_per_side") cfg.nodes_per_side = parse_int<int>(value, key);
    else if (key == "time_steps") cfg.time_steps = parse_int<int>(value, key);
    else if (key == "horizon") cfg.horizon = parse_double(value, key);
    else if (key == "betas") cfg.betas = parse_list(value);
    else if (key == "tolerance") cfg.tolerance = parse_double(value, key);
    else if (key == "fixed_basis_tolerance") cfg.fixed_basis_tolerance = parse_double(value, key);
    else if (key == "reference_tolerance") cfg.reference_tolerance = parse_double(value, key);
    else if (key == "energy_tol") cfg.energy_tol = parse_double(value, key);
    else if (key == "max_iters") cfg.max_iters = parse_int<int>(value, key);
    else if (key == "max_outer") cfg.max_outer = parse_int<int>(value, key);
    else if (key == "output_dir") cfg.output_dir = std::string(value);
    else if (key == "seed") cfg.seed = parse_int<std::uint64_t>(value, key);
    else if (key == "zero_target") cfg.zero_target = parse_bool(value, key);
    else if (key == "rank_mode") {
      if (value == "energy") cfg.rank_mode = RankMode::Energy;
      else if (value == "max") cfg.rank_mode = RankMode::Max;
      else throw ConfigError("rank_mode must be 'energy' or 'max'");
    } else {
      throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + std::string(key) + "'");
    }
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& cfg) {
  std::ostringstream out;
  out << "nodes_per_side = " << cfg.nodes_per_side << '\n';
  out << "time_steps = " << cfg.time_steps << '\n';
  out << "horizon = " << format_double(cfg.horizon) << '\n';
  out << "betas = ";
  for (std::size_t i = 0; i < cfg.betas.size(); ++i) out << (i ? ", " : "") << format_double(cfg.betas[i]);
  out << '\n';
  out << "tolerance = " << format_double(cfg.tolerance) << '\n';
  out << "fixed_basis_tolerance = " << format_double(cfg.fixed_basis_tolerance) << '\n';
  out << "reference_tolerance = " << format_double(cfg.reference_tolerance) << '\n';
  out << "energy_tol = " << format_double(cfg.energy_tol) << '\n';
  out << "max_iters = " << cfg.max_iters << '\n';
  out << "max_outer = " << cfg.max_outer << '\n';
  out << "output_dir = " << cfg.output_dir << '\n';
  out << "seed = " << cfg.seed << '\n';
  out << "rank_mode = " << to_string(cfg.rank_mode) << '\n';
  out << "zero_target = " << (cfg.zero_target ? "true" : "false") << '\n';
  return out.str();
}

}  // namespace podocp::cli
