#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gospa::cli {

/// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUsage = 2;

/// Runs the command line `args` (without the program name). Reports go to
/// `out`, diagnostics to `err`.
///
///   compute TRUTH ESTIMATE --c C [--alpha A] [--p P] [--metric gospa|ospa|uospa]
///   mean TRUTH_MODEL ESTIMATE_MODEL --c C [--alpha A] [--p P] [--p-prime Q]
///        [--samples K] [--seed S] [--threads T] [--metric ...]
///   table1 [--samples K] [--seed S] [--threads T]
///
/// Every subcommand accepts --format json|csv|text and --precision DIGITS.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// `value` rounded to `digits` significant digits, printed in %g style.
std::string format_number(double value, int digits);

}  // namespace gospa::cli
