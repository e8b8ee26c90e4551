#pragma once

#include <string>
#include <vector>

namespace causaljam {

/// Entry point behind the command-line tool; also called directly by tests.
/// Exit codes: 0 success, 1 verify-property failure, 2 usage/config error.
int run_cli(const std::vector<std::string>& args);

}  // namespace causaljam
