#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "qsl/checks.hpp"

namespace qsl::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kSuccess = 0,
  kCheckFailed = 1,
  kUsageError = 2,
};

/// Entry point of the `qsl` tool. `args[0]` is the program name.
/// Subcommands: bound, evolve, hit, eta, fg, check.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Prints one line per suite (and the reproduction data of each failure);
/// returns kSuccess iff every suite passed.
int report_checks(const std::vector<SuiteResult>& results, std::ostream& out);

}  // namespace qsl::cli
