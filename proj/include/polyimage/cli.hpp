#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace polyimage::cli {

enum ExitCode : int {
  kSuccess = 0,
  kInputError = 1,
  kNotSurjective = 2,
  kVerificationFailed = 3,
};

/// Runs one command. `args` excludes the program name, e.g.
/// {"member", "--poly", "square.json", "--point", "1,1"}.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace polyimage::cli
