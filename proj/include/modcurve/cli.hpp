#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace modcurve::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNotIssued = 1;
inline constexpr int kExitInputError = 2;

/// Runs the command line `args` (without the program name). Output goes to
/// `out`, diagnostics to `err`; returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace modcurve::cli
