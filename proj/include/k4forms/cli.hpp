#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace k4 {

// Runs the command line tool. args excludes the program name.
// Exit codes: 0 ok, 1 parse or argument error, 2 precondition failure,
// 3 verification failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace k4
