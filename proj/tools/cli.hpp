#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace clex::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kSchemaError = 2,
  kCapExceeded = 3,
  kNonConvergence = 4,
};

// Runs one subcommand. Results go to `out` unless --out is given; diagnostics to `err`.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace clex::cli
