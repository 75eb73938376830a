#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace efx {

// Runs the command-line tool on `args` (without the program name), writing
// machine output to `out` and diagnostics to `err`. Returns the process exit
// code: 0 success, 1 usage or internal error, 2 I/O or parse error, 3 check
// found a violation, 4 budget exceeded.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace efx
