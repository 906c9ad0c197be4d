#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "isd/harness.hpp"
#include "isd/operational.hpp"

namespace isd::cli {

/// Exit-code contract shared by every subcommand.
enum ExitStatus : int {
    kSuccess = 0,
    kNegative = 1,
    kUsageError = 2,
    kInternalError = 3,
};

/// Runs `isd <args...>`; `args` excludes the program name. Human-readable
/// results go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// The body of `isd equiv` with a replaceable execution relation.
int run_equiv(const harness::EquivConfig& cfg, std::ostream& out, std::ostream& err,
              const StepFunction& steps);

} // namespace isd::cli
