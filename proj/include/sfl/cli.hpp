#pragma once

#include <string>
#include <vector>

namespace sfl {

// Exit codes: 0 success, 1 warnings elevated by --strict, 2 config parse
// error, 3 invariant violation, 4 runtime failure, 64 usage error.
int run_cli(const std::vector<std::string>& args);
int run_cli(int argc, const char* const* argv);

}  // namespace sfl
