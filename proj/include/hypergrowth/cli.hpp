#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hypergrowth::cli {

/// Exit statuses shared by every subcommand.
enum ExitStatus : int { kOk = 0, kFailure = 1, kUsage = 2 };

/// Runs the command line tool. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hypergrowth::cli
