// Copyright 2026 The podocp Authors.
// SPDX-License-Identifier: Apache-2.0

#include "podocp/csv.hpp"

#include <cstdio>
#include <ostream>

namespace podocp::csv {

std::string format(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.11e", value);
  return buf;
}

void write_header(std::ostream& out, std::span<const std::string> columns) {
  for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
  out << '\n';
}

void write_row(std::ostream& out, std::span<const double> values) {
  for (std::size_t i = 0; i < values.size(); ++i) out << (i ? "," : "") << format(values[i]);
  out << '\n';
}

Row& Row::add(std::string_view text) {
  cells_.emplace_back(text);
  return *this;
}

Row& Row::add(double value) {
  cells_.push_back(format(value));
  return *this;
}

Row& Row::add(long long value) {
  cells_.push_back(std::to_string(value));
  return *this;
}

void Row::write(std::ostream& out) const {
  for (std::size_t i = 0; i < cells_.size(); ++i) out << (i ? "," : "") << cells_[i];
  out << '\n';
}

}  // namespace podocp::csv
