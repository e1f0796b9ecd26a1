#pragma once

#include <iosfwd>

namespace esph::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kNotGeneric = 2,
  kParse = 3,
  kTheoremViolation = 4,
  kNotABMEar = 5,
};

// Runs one command line (argv[0] is the program name) and returns its exit
// code. Reports go to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace esph::cli
