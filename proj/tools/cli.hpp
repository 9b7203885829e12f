#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace polyagg::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitBudget = 2;
inline constexpr int kExitUsage = 64;

/// Runs one command. `args` excludes the program name. Results go to `out`
/// (or the --output file), usage text to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace polyagg::cli
