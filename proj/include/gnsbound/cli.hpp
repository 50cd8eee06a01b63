#pragma once

#include <iosfwd>

namespace gnsbound::cli {

enum ExitCode : int {
    kOk = 0,
    kViolation = 1,  // an inequality failed in a verification sweep
    kBadInput = 2,
    kAccuracy = 3,   // quadrature could not reach its target, or sampling failed
};

/// Entry point of the `gnsbound` tool. Subcommands: bound, parabolic, sample,
/// verify parabolic, verify gns. Normal output goes to `out`, diagnostics to
/// `err`; files are written once, at the end of a successful command.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gnsbound::cli
