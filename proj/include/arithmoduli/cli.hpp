#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace arithmoduli {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 1,
  kExitPrecision = 2,
  kExitInternal = 70,
  kExitUsage = 64,
};

/// Runs the command-line tool; args[0] is the program name.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err);

}  // namespace arithmoduli
