#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace diffmc::cli {

// Exit codes: 0 success (including pass), 1 counterexample found by `check`,
// 2 usage / parse / IO error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace diffmc::cli
