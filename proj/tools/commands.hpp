#ifndef ASYM_TOOLS_COMMANDS_HPP
#define ASYM_TOOLS_COMMANDS_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace asym::cli {

/// Runs one command line (program name excluded) and returns the exit code:
/// 0 on success, 1 when `verify` finds a failing check, 2 on any error.
/// Errors are written to `err` as a JSON object.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace asym::cli

#endif  // ASYM_TOOLS_COMMANDS_HPP
