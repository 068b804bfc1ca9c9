#pragma once

#include <iosfwd>

namespace wedgeop::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

/// Runs one `wedgeop` invocation. Tables go to `out` unless --out names a file prefix.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace wedgeop::cli
