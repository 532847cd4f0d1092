#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace conekit {

// The conekit binary behind a testable seam: `args` excludes the program
// name. Primary artifacts go to --out (or `out`); failure diagnostics go to
// `err` as a JSON object naming the violated invariant. Exit code 0 on
// success, 1 on verification or module failure, 2 on usage errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace conekit
