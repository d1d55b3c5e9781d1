#pragma once

#include <ostream>

namespace ulab::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitUsage = 2,
  kExitIo = 3,
};

/// Parses argv (argv[0] is the program name), runs one subcommand and
/// returns its exit code. Normal output goes to out, diagnostics to err.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ulab::cli
