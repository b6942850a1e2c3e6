#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "fiveprime/numeric.hpp"

namespace fiveprime {

inline constexpr double kMaxSieveX = 1e9;
inline constexpr std::uint64_t kMaxArithmeticN = 10'000'000;
inline constexpr std::size_t kSieveSegment = std::size_t{1} << 18;

/// Primes in (lambda_cut * X, X] with log weights and split-precision
/// powers p^c and p^d (hi + lo carries ~106 bits).
struct PrimeTable {
  double X = 0.0;
  double lambda_cut = 0.0;
  double c = 0.0;
  double d = 0.0;
  std::vector<std::uint64_t> primes;
  std::vector<double> logp;
  std::vector<DoubleDouble> pc;
  std::vector<DoubleDouble> pd;

  std::size_t size() const noexcept { return primes.size(); }
  bool empty() const noexcept { return primes.empty(); }
  /// Integer bounds of the support: lo < n <= hi.
  std::uint64_t lower() const;
  std::uint64_t upper() const;
};

/// Segmented sieve of (lambda_cut * X, X]. Requires 2 <= lambda_cut*X < X <= 1e9.
PrimeTable sieve(double X, double lambda_cut, double c, double d, unsigned threads = 1);

/// sum of log p over the table, i.e. theta(X) - theta(lambda X).
double chebyshev_weight(const PrimeTable& table);

/// Stable identifier of (X, lambda, c, d, primes).
std::string table_digest(const PrimeTable& table);

struct ArithmeticTables {
  std::uint64_t n_max = 0;
  std::vector<double> mangoldt;      // index n, entry 0 unused
  std::vector<std::int8_t> moebius;  // index n, entry 0 unused

  double lambda(std::uint64_t n) const { return mangoldt.at(n); }
  int mu(std::uint64_t n) const { return moebius.at(n); }
};

/// Linear sieve for mu and Lambda on [1, n_max]; n_max <= 1e7.
ArithmeticTables arithmetic_tables(std::uint64_t n_max);

// Binary cache: little-endian; "DPS1", X (f64), lambda (f64), count (u64),
// then primes (u64[count]), logp (f64[count]), p^c as (hi, lo) f64 pairs,
// p^d as (hi, lo) f64 pairs.
void save_cache(const PrimeTable& table, const std::filesystem::path& path);

/// Loads a cache written by save_cache. The exponents are not stored in the
/// file; spot entries are re-derived and compared against (c, d).
PrimeTable load_cache(const std::filesystem::path& path, double c, double d);

}  // namespace fiveprime
