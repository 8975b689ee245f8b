#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qdescent::cli {

enum ExitCode : int {
    kOk = 0,
    kInputError = 1,
    kOracleNotFound = 2,
    kNotRepresentable = 3,
    kInternalError = 4,
};

/// Runs the command line `args` (without the program name), writing results to
/// `out` and diagnostics to `err`. Returns the process exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace qdescent::cli
