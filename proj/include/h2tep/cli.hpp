#pragma once

#include <iosfwd>

namespace h2tep::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitSolver = 4;

// Entry point of the h2tep tool. Regular output goes to `out`; errors are
// summarized as one JSON object per line on `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace h2tep::cli
