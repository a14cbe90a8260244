#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace rumin {

/// Exit statuses of run_command.
enum ExitStatus : int {
  kExitOk = 0,
  /// A check failed, or the input was malformed.
  kExitFailure = 1,
  /// Degenerate level or a request outside the supported degree range.
  kExitScope = 2,
};

/// Runs one subcommand (verify-complex, verify-lemmas, slice, coarea,
/// report). `args` excludes the program name. Output is deterministic for
/// fixed arguments.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rumin
