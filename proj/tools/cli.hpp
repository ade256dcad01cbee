#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace crncex::cli {

/// Runs the crn-cex command line. Exit codes: 0 counterexample found (or oracle success),
/// 2 budget exhausted, 1 usage, input or solver error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace crncex::cli
