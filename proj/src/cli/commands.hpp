#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace scarif::cli {

inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int {
    kExitOk = 0,
    kExitInputError = 2,
    kExitOutOfRange = 3,
};

/// Runs one command line (args[0] is the program name). Never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace scarif::cli
