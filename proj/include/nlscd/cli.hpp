#pragma once

#include <iosfwd>

namespace nlscd::cli {

enum ExitCode : int { ok = 0, validation_error = 1, not_converged = 2, verify_failed = 3 };

/// Verbs: spectrum, groundstate, actionmin, verify, kernel-dump.
/// JSON goes to --json PATH (stdout when absent), CSV to --csv PATH.
int parse_and_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nlscd::cli
