#pragma once

#include <iosfwd>

namespace totpos::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_usage = 1,           // parse or usage error
    exit_no_mle = 2,          // the MLE does not exist
    exit_not_converged = 3,   // sweep budget exhausted or certificate failed
};

/// Entry point of the `totpos` executable. Documents go to `out` (or the
/// --output file), diagnostics to `err`.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace totpos::cli
