#ifndef RENEWT_CLI_HPP
#define RENEWT_CLI_HPP

#include <string>
#include <vector>

namespace renewt::cli {

/// Run the command-line driver on argv-style tokens (program name excluded).
/// Exit codes: 0 success, 2 input error, 3 math/verification failure.
int run(const std::vector<std::string>& args);

} // namespace renewt::cli

#endif
