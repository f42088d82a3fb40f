#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace patrolgame::cli {

// Exit codes of `run`.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kDomain = 2;

// Runs the command line `args` (without the program name). Results go to `out`
// unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace patrolgame::cli
