#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bzz {

// Exit codes: 0 success, 1 verification failure, 2 usage/parse error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bzz
