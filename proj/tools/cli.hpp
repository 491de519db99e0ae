#pragma once

#include <iosfwd>

namespace mdsmm {

/// Exit codes of the command-line tool.
enum ExitCode : int {
    exit_ok = 0,
    exit_failure = 1,
    exit_usage = 2,
    exit_io = 3,
    exit_shape = 4,
    exit_stratification = 5,
    exit_infeasible = 6,
};

/// Runs one `mdsmm` invocation. Reports without --report-out go to `out`; diagnostics go to `err`.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace mdsmm
