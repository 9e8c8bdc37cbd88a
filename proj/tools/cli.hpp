#pragma once

// Command-line front end. Exit codes: 0 success with every verdict passing,
// 1 some verdict failed, 2 usage or configuration error.

#include <ostream>

namespace chlab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerdictFailed = 1;
inline constexpr int kExitUsage = 2;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace chlab::cli
