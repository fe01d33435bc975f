#pragma once

#include <iosfwd>

namespace curenet::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitInvariant = 2,
  kExitInput = 3,
  kExitSolver = 4,
};

/// Entry point of the `curenet` tool. Output goes to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace curenet::cli
