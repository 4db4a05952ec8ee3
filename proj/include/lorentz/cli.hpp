#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lorentz {

enum ExitCode : int {
  kExitOk = 0,
  kExitInvalidInput = 2,
  kExitNumerical = 3,
  kExitInfeasible = 4,
};

/// Runs the command line (args excludes the program name). JSON or CSV goes
/// to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace lorentz
