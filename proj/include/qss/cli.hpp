#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qss {

// Exit codes: 0 decided, 1 infeasible weight or inconclusive run, 2 parse or
// validation error, 64 unknown subcommand.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, const char* const* argv);

}  // namespace qss
