#pragma once

#include <string>
#include <vector>

namespace bouquet {

// Exit codes: 0 success, 2 usage or configuration, 3 computation produced
// nothing, 4 verification failure.
int run_cli(int argc, const char* const* argv);
int run_cli(const std::vector<std::string>& args);

}  // namespace bouquet
