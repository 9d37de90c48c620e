#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace coax {

/// Exit statuses of the command-line front end.
enum ExitStatus : int {
  kExitOk = 0,
  kExitRejected = 1,  // not derivable / rejected
  kExitUsage = 2,     // usage or input error
  kExitBudget = 3,    // iteration budget, rule cap or closure budget exceeded
};

/// Runs one invocation; `args` excludes the program name. Results go to
/// `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace coax
