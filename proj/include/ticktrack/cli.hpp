#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ticktrack::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int
{
  kOk = 0,
  kFailure = 1, // validation or computation failure
  kUsage = 2,
};

/// Runs one command line; `args` excludes the program name.
/// Subcommands: gen-ref, simulate, features, compare, cdf, replay.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace ticktrack::cli
