#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace rdk {

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitNegative = 1, kExitUsage = 2, kExitMissing = 3 };

/// Runs one command. `args` excludes the program name. Structured output
/// goes to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rdk
