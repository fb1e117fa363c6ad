#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace toric_af {

/// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitUnknown = 2;  // Unknown verdict under --strict
inline constexpr int kExitUsage = 64;

/// Runs one command; `args` excludes the program name. Standard input is
/// read where a file argument is "-".
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in);

}  // namespace toric_af
