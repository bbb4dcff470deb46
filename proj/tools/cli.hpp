#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cqdist::cli {

enum ExitCode : int {
  kOk = 0,
  kBadArguments = 1,
  kSpecInvalid = 2,
  kNumericalFailure = 3,
  kComparisonFailed = 4,
};

/// Runs one cqdist command. args excludes the program name. Reports go to
/// out (or to --out FILE, written atomically); diagnostics go to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cqdist::cli
