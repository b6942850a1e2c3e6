#pragma once

// Counting prime 5-tuples (ordered, repetition allowed) with
// |sum p^c - N1| and |sum p^d - N2| inside a window, by exhaustive
// enumeration or a 3 + 2 meet-in-the-middle join.

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string_view>
#include <vector>

#include "fiveprime/params.hpp"
#include "fiveprime/primes.hpp"

namespace fiveprime {

enum class CountMode {
  Indicator,           // |r1| < eps1 and |r2| < eps2
  IndicatorLogWindow,  // |r1| <= eps1 log X and |r2| <= eps2 log X, X = N1^{1/c}
  Smoothed,            // weight phi(r1/eps1) phi(r2/eps2), truncated at 8 widths
};

std::string_view to_string(CountMode mode) noexcept;
CountMode parse_count_mode(std::string_view text);

struct SolutionRecord {
  std::array<std::uint64_t, 5> p{};  // ascending
  double r1 = 0.0;                   // sum p^c - N1
  double r2 = 0.0;                   // sum p^d - N2
  double weight = 0.0;               // prod log p
};

struct CountResult {
  CountMode mode = CountMode::Indicator;
  std::optional<std::uint64_t> raw_count;  // absent in smoothed mode
  double weighted_count = 0.0;
  double main_term_scale = 0.0;
  double elapsed_seconds = 0.0;
  double truncation_bound = 0.0;  // smoothed mode: bound on the dropped Gaussian tail
  std::vector<SolutionRecord> records;  // one per solution multiset, if requested
};

struct CountOptions {
  unsigned threads = 1;
  bool collect_records = false;
};

inline constexpr double kMaxExhaustiveTuples = 1e10;
inline constexpr std::size_t kMaxMitmPrimes = 5000;

/// Direct enumeration with interval pruning. Requires (#primes)^5 <= 1e10.
CountResult exhaustive_count(const PrimeTable& table, const SystemParams& params, double eps1, double eps2,
                             CountMode mode, const CountOptions& options = {});

/// Triples joined against a sorted list of pair sums. Requires #primes <= 5000.
CountResult mitm_count(const PrimeTable& table, const SystemParams& params, double eps1, double eps2,
                       CountMode mode, const CountOptions& options = {});

/// sum over tuples of prod(log p) phi(r1/eps1) phi(r2/eps2), via mitm_count.
CountResult smoothed_count(const PrimeTable& table, const SystemParams& params, double eps1, double eps2,
                           const CountOptions& options = {});

/// eps1 eps2 X^{5-c-d}.
double main_term_scale(double eps1, double eps2, double X, double c, double d);
double main_term_scale(const SystemParams& params, const DerivedScales& scales);

/// Writes p1..p5,r1,r2,weight rows.
void write_records(const std::vector<SolutionRecord>& records, const std::filesystem::path& path);

}  // namespace fiveprime
