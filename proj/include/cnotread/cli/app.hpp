#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cnotread::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

/// Runs the tool on `args` (program name excluded) and returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cnotread::cli
