#pragma once

#include <iosfwd>

namespace lkllt {

inline constexpr const char* kVersion = "0.1.0";

/// Exit statuses of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,  // a verification suite found a violated inequality
  kExitUsage = 2,        // bad flags, bad input files, invalid parameters
  kExitNumerical = 3,    // numerical failure or degenerate chain
};

/// Runs the `lkllt` command line. Reports go to `out` (or to --output),
/// diagnostics and timing to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lkllt
