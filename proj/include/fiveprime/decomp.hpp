#pragma once

// Heath-Brown identity for the von Mangoldt function, the thresholds used to
// sort its convolution blocks into Type I and Type II sums, and direct
// evaluation of those bilinear sums.

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "fiveprime/numeric.hpp"
#include "fiveprime/primes.hpp"

namespace fiveprime {

struct HBTerm {
  int j = 0;
  int sign = 0;            // (-1)^{j-1}
  std::uint64_t binom = 0;  // C(k, j)
};

/// Lambda(n) = sum_j sign_j C(k, j) sum_{n_1...n_{2j} = n, n_{j+1..2j} <= z}
///             log(n_1) mu(n_{j+1}) ... mu(n_{2j}), valid for n <= 2 z^k.
struct HBDecomposition {
  int k = 1;
  double z = 1.0;
  std::vector<HBTerm> terms;
};

HBDecomposition hb_decomposition(int k, double z);

/// Evaluates the right-hand side of the identity at n; throws OutOfRange
/// unless 1 <= n <= 2 z^k and n <= tables.n_max.
double hb_evaluate(int k, double z, std::uint64_t n, const ArithmeticTables& tables);
double hb_evaluate(const HBDecomposition& hb, std::uint64_t n, const ArithmeticTables& tables);

/// Smallest integer z >= 1 with 2 z^k >= n_max.
std::uint64_t hb_cutoff(int k, std::uint64_t n_max);

inline constexpr std::uint64_t kMaxHBVerify = 10'000;

/// max over 1 <= n <= n_max of |identity - Lambda(n)| with z = hb_cutoff(k, n_max).
/// Requires k in {1, 2, 3} and n_max <= 1e4.
double hb_verify_range(int k, std::uint64_t n_max, unsigned threads = 1);

struct DecompThresholds {
  double X = 0.0;
  double R = 0.0;
  double frakA = 0.0;  // min(X^{59/37}/R, X^{25/37})
  double frakB = 0.0;  // X^{6/37}
  double frakC = 0.0;  // min(X^{56/37}/R, R X^{-12/37})
};

DecompThresholds thresholds(double X, double R);

/// R = |x| X^c + |y| X^d.
double frequency_size(double x, double y, double X, double c, double d);

/// frakB^2 <= frakC and X/frakA <= frakC, each up to a relative rounding slack.
struct ThresholdCheck {
  bool b_squared_le_c = false;
  bool x_over_a_le_c = false;
};

ThresholdCheck check_thresholds(const DecompThresholds& th, double rel_slack = 1e-12);

enum class SumKind { TypeI, TypeII };

std::string_view to_string(SumKind kind) noexcept;

struct CaseLabel {
  SumKind kind = SumKind::TypeI;
  int case_number = 0;                 // 1, 2 or 3
  std::vector<std::size_t> m_blocks;   // zero-based block indices forming m
  std::vector<std::size_t> n_blocks;   // zero-based block indices forming n
  double M = 1.0;                      // product of the m blocks
  double N = 1.0;                      // product of the n blocks
};

inline constexpr std::size_t kBlockCount = 20;

/// Sorts a profile of 20 dyadic block sizes (left endpoints) into a case.
/// Blocks 1-10 carry smooth weights, blocks 11-20 carry Moebius weights.
/// Throws InfeasibleProfile when the profile violates the preconditions or
/// no case applies.
CaseLabel classify_blocks(std::span<const double> blocks, const DecompThresholds& th);

inline constexpr double kMaxTypeSumTerms = 1e7;

/// Type I: sum_{m ~ M} a(m) sum_{n ~ N} e(x (mn)^c + y (mn)^d) (b must be empty).
/// Type II: sum_{m ~ M} sum_{n ~ N} a(m) b(n) e(x (mn)^c + y (mn)^d).
/// a has one entry per integer in (M, 2M], b one per integer in (N, 2N].
ComplexValue type_sum(SumKind kind, std::span<const double> a, std::span<const double> b, double M, double N,
                      double c, double d, double x, double y);

}  // namespace fiveprime
