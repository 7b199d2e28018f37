#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace solitonlab {

/// Runs the command line tool on `args` (args[0] is the program name).
/// Returns the exit code: 0 when every check passes, 1 when a check fails,
/// 2 for usage errors and malformed input.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace solitonlab
