#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace corrkit::cli {

/// Exit codes shared by every command.
enum ExitCode : int {
  kOk = 0,
  kViolation = 1,
  kInvalidInput = 2,
  kUnsupported = 3,
  kInconclusive = 4,
};

/// Runs one command line; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace corrkit::cli
