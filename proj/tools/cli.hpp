#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lft::cli {

/// Exit statuses of run_cli.
inline constexpr int kOk = 0;
inline constexpr int kNegative = 1;
inline constexpr int kUsage = 2;

/// args excludes the program name. Results go to out, diagnostics to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lft::cli
