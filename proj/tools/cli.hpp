#ifndef RMF_TOOLS_CLI_HPP
#define RMF_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace rmf::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2, kResource = 3 };

// args excludes the program name. Artifacts go to out (or --out), diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rmf::cli

#endif  // RMF_TOOLS_CLI_HPP
