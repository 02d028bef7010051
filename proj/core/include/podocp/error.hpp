// Copyright 2026 The podocp Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace podocp {

enum class ErrorKind {
  NotSpd,
  DimensionMismatch,
  ConvergenceFailure,
  EmptyOutput,
  NonFiniteValue,
  InvalidArgument,
  TooLarge,
  EmptySnapshotSet,
  ZeroEnergy,
  OracleFailure,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Exception carrying a machine-checkable kind next to the message.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

#define PODOCP_REQUIRE(cond, kind, msg)                 \
  do {                                                  \
    if (!(cond)) throw ::podocp::Error((kind), (msg));  \
  } while (false)

}  // namespace podocp
