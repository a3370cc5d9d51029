#pragma once

#include <string>

#include <json.hpp>

#include "endoquant/cli/config.hpp"

namespace endoquant {

/// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailure = 1;
inline constexpr int kExitInputError = 2;

struct CommandResult {
  int status = kExitOk;
  /// Machine-readable result.
  nlohmann::json output;
  /// Human-readable summary.
  std::string text;
};

/// graphs: class table of the configured family through nu^order.
/// tensor: C^{Lbar K} (by the configured route) and E_{K Lbar} per nu order.
/// mul:    sections.f * sections.g by the configured route.
/// verify: full verification report; status 1 iff a check fails.
/// Throws InvalidInput for unknown commands and bad configurations.
CommandResult run_command(const std::string& command, const Config& config);

}  // namespace endoquant
