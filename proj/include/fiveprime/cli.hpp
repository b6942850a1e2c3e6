#pragma once

#include <iosfwd>

namespace fiveprime {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Parses argv and runs one subcommand: primes, expsum, regions, exppair,
/// hb-verify, classify, search, scaling, integrate, verify.
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fiveprime
