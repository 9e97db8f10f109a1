#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qcurve::cli {

enum ExitCode : int { kSuccess = 0, kCheckFailure = 1, kInputError = 2 };

/// Runs one command line (without the program name).  Data goes to files
/// named on the command line; diagnostics go to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qcurve::cli
