#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kgheun::cli {

enum ExitCode : int {
  exit_ok = 0,
  exit_verification = 1,
  exit_config = 2,
  exit_degenerate = 3,
};

/// Runs one command line (args excludes the program name). Results go to
/// out, or to the --out file; diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kgheun::cli
