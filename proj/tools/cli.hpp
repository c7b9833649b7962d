#ifndef POLYFOCK_TOOLS_CLI_HPP
#define POLYFOCK_TOOLS_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace polyfock::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Runs the tool with args (without the program name). Results go to out,
/// diagnostics to err. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace polyfock::cli

#endif  // POLYFOCK_TOOLS_CLI_HPP
