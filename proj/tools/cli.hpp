#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace faber::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitComputation = 1;
inline constexpr int kExitUsage = 2;

/// Runs one subcommand: levels, analyze, recover, rates, widths, cubature,
/// noncompact or comb. args excludes the program name. Tables and series go
/// to --out (or `out` when no path is given); the last line written to
/// `out` is a one-line summary. Diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace faber::cli
