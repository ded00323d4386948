#ifndef KMPSCP_CLI_HPP
#define KMPSCP_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace kmpscp {

enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitUsage = 2 };

/// Runs one command line (without the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kmpscp

#endif  // KMPSCP_CLI_HPP
