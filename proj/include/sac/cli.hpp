#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sac {
namespace cli {

// Exit codes: 0 clean, 1 findings present, 2 usage/IO/format error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFindings = 1;
inline constexpr int kExitUsage = 2;

/// Runs one invocation; `args` excludes the program name. Reports go to
/// `out`, errors and findings to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cli
}  // namespace sac
