#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fss::cli {

inline constexpr const char* kToolName = "fsscode";
inline constexpr const char* kToolVersion = "0.1.0";

/// Exit codes shared by all subcommands.
enum Exit : int { kOk = 0, kError = 1, kInfeasible = 2, kUnknown = 3 };

/// Runs one command line (without the program name). Results go to `out`
/// unless an output path is given; diagnostics and help go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fss::cli
