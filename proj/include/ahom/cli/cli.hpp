#pragma once

// Batch command-line front end: every computation and check with JSON output.

#include <iosfwd>
#include <string>
#include <vector>

namespace ahom {

/// Exit codes of run_cli.
enum ExitCode : int { kExitOk = 0, kExitVerificationFailed = 1, kExitUnsupported = 2 };

/// Runs one invocation; args excludes the program name. Reports go to out,
/// diagnostics to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ahom
