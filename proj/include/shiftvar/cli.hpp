#ifndef SHIFTVAR_CLI_HPP
#define SHIFTVAR_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace shiftvar {

// Runs one CLI invocation (argv without the program name).  Returns 0 on
// success, 1 on validation errors, 2 when an enumeration budget is exceeded.
int run_cli(std::vector<std::string> args, std::ostream& out,
            std::ostream& err);

}  // namespace shiftvar

#endif  // SHIFTVAR_CLI_HPP
