// Copyright 2026 The podocp Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace podocp::csv {

/// Scientific notation, 12 significant digits.
std::string format(double value);

void write_header(std::ostream& out, std::span<const std::string> columns);
void write_row(std::ostream& out, std::span<const double> values);

/// Row builder for mixed text/number rows.
class Row {
public:
  Row& add(std::string_view text);
  Row& add(double value);
  Row& add(long long value);
  Row& add(int value) { return add(static_cast<long long>(value)); }
  Row& add(std::size_t value) { return add(static_cast<long long>(value)); }
  void write(std::ostream& out) const;

private:
  std::vector<std::string> cells_;
};

}  // namespace podocp::csv
