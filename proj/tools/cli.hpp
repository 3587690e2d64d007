#ifndef EVFUSE_TOOLS_CLI_HPP
#define EVFUSE_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace evfuse::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kInput = 2,
    kTotalConflict = 3,
    kCheckFailed = 4, // compare expectation or audit law failed
};

// Runs the command line `args` (args[0] is the program name) against the
// given streams and returns the process exit code.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

} // namespace evfuse::cli

#endif // EVFUSE_TOOLS_CLI_HPP
