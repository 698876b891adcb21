#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace genlaw::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitIngest = 2;
inline constexpr int kExitCompute = 3;
inline constexpr int kExitWrite = 4;

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace genlaw::cli
