#pragma once

#include <ostream>
#include <string>

#include "formkit/numeric.hpp"

namespace formkit::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kParseError = 2,
  kInvariantError = 3,
  kPreconditionError = 4,
};

/// Parses "rank=<x>,eq=<y>" (either key may be omitted) on top of `base`.
Tolerance apply_tolerance_override(const std::string& spec, Tolerance base);

/// Runs the command line `argv` and returns the exit code. Reports go to
/// `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace formkit::cli
