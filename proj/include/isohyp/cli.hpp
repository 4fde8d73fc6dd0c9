#pragma once

#include <iosfwd>

namespace isohyp {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitValidation = 2, kExitNumerical = 3 };

/// Entry point of the isohyp command line tool. Results go to `out` unless
/// redirected with --out; diagnostics go to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace isohyp
