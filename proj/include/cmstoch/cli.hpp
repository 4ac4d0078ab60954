#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cmstoch {

inline constexpr const char* kVersion = "0.1.0";

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // failed self-check or internal error
inline constexpr int kExitInput = 2;
inline constexpr int kExitGuard = 3;
inline constexpr int kExitInconclusive = 4;

// Runs the command line `args` (program name excluded). Reports go to `out`,
// JSON error bodies to `err`. Returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace cmstoch
