#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sphan::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 1,
  kPreconditionViolated = 2,
  kInternalError = 3,
};

/// Runs the command line `args` (without the program name). Reports go to
/// `out` unless redirected with --out; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sphan::cli
