#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace coefchange {

// exit codes of the command-line front end
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitCapExceeded = 3;

/// Runs one CLI invocation; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace coefchange
