#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace expstar::cli {

/// Exit codes: 0 success, 1 the mathematics says no (validation or check failure),
/// 2 usage or input-grammar error, 3 computation error (order budget, analytic domain, precision).
enum ExitCode : int { ok = 0, validation_failure = 1, usage_error = 2, computation_error = 3 };

/// Runs one command. args excludes the program name. Diagnostics go to err as a single line.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace expstar::cli
