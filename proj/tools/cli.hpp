#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hopps::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kInvalid = 2,
    kInfeasible = 3,
    kTimeout = 4,
};

/// Runs one command line (without the program name). Machine output goes to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace hopps::cli
