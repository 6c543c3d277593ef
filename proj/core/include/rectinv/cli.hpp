#pragma once

#include <iosfwd>

namespace rectinv {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,        // parse or validation failure
  kExitConvergence = 3,  // divergence, or an unconverged/failed result under --strict
};

// Entry point behind the rectinv executable. Data goes to out (or --out),
// diagnostics to err.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rectinv
