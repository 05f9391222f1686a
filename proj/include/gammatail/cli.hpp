#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gammatail::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kOk = 0,
  kCertificationFailure = 1,
  kInvalidInput = 2,
  kInconclusive = 3,
};

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Shortest decimal string that round-trips to `v`.
std::string format_double(double v);

}  // namespace gammatail::cli
