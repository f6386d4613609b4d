#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lforge::cli {

enum ExitCode : int { kOk = 0, kViolations = 1, kIncomplete = 2, kUsage = 3 };

/// Runs one command line (args exclude the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lforge::cli
