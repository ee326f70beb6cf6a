#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace selfsim::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitValidation = 1,
    kExitNumeric = 2,
    kExitSelftest = 3,
};

/// Runs one subcommand. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace selfsim::cli
