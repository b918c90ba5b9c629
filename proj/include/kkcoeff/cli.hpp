#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace kkcoeff {

// The whole command surface, callable in-process: args as on the command
// line (without the program name), reports to `out`, diagnostics to `err`.
// Exit codes: 0 ok, 1 failed checks or bad input, 2 a violated equivalence
// biconditional (an implementation falsifier, never a property of the
// sample).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kkcoeff
