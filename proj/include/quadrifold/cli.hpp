#ifndef QUADRIFOLD_CLI_HPP
#define QUADRIFOLD_CLI_HPP

#include <string>
#include <vector>

namespace quadrifold {

inline constexpr const char* kToolVersion = "1.0.0";

/// Runs the command-line driver on argv-style arguments (program name
/// excluded).  The JSON report (or error object) is appended to *report.
/// Returns the process exit code: 0 success, 1 malformed input, 2 budget or
/// sampling exhaustion, 3 internal invariant violation.
int cli_run(const std::vector<std::string>& args, std::string* report);

}  // namespace quadrifold

#endif
