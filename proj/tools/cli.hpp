#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hulldev::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kViolation = 2 };

/// Runs one hulldev command. args[0] is the program name. The JSON report
/// goes to --out when given, otherwise to `out`; a one-line cause goes to
/// `err` on failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hulldev::cli
