#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace skein {

/// Exit codes of the command-line front end.
enum ExitCode : int { kExitOk = 0, kExitContradiction = 1, kExitBadInput = 2, kExitBuilder = 3 };

/// Runs the front end on argv-style arguments (args[0] is the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace skein
