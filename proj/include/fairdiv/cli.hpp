#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fairdiv::cli {

// The full driver behind the `fairdiv` binary, callable in-process for tests.
// `args` excludes the program name. Returns the process exit code: 0 for
// success (and for an audit whose checks all hold or are skipped), 1 when an
// audit check is violated, 2 on usage, parse, or enumeration-budget errors.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

} // namespace fairdiv::cli
