#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace varseq::cli {

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kUsage = 2,
  kToleranceMissed = 3,
};

/// Runs one command line (args[0] is the program name). Results go to the
/// --out file when given, else to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace varseq::cli
