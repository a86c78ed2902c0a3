#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qrange::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitVerification = 3;

/// Runs the command line `args` (without the program name), writing results
/// to `out` and diagnostics and the run manifest to `err`. Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qrange::cli
