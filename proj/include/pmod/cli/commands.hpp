#pragma once

#include <iosfwd>

namespace pmod::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsageError = 1,
  kInputError = 2,
  kSolveError = 3,
  kValidationFailure = 4,
};

/// Entry point for the pmod tool. Writes results to `out` and diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pmod::cli
