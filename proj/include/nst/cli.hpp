#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nst {

/// Command dispatch for the nst tool. Exit codes: 0 success, 1 validation
/// failure, 2 input/syntax/usage error. Diagnostics go to err, results to
/// out or to files named on the command line.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nst
