#pragma once

#include <string>
#include <vector>

namespace premise::cli {

// Runs the tool with the given argument list (excluding argv[0]).
// Exit codes: 0 success, 2 usage or format error, 3 domain error
// (e.g. single-label input).
int run(const std::vector<std::string>& args);

}  // namespace premise::cli
