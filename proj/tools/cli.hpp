#pragma once

#include <ostream>

namespace qst::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

/// Parses argv, runs one experiment and writes its CSV (to --out, or to
/// `out` when no path is given). Diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qst::cli
