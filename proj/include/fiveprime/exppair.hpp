#pragma once

// Exponent pairs in exact rational arithmetic, the A and B processes, and the
// bound formulas built on them, together with empirical checkers that fit
// the implied constant of each bound over a seeded random family.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "fiveprime/numeric.hpp"

namespace fiveprime {

using Rational = boost::multiprecision::cpp_rational;

struct ExponentPair {
  Rational kappa;
  Rational lam;

  bool operator==(const ExponentPair&) const = default;
};

/// 0 <= kappa <= 1/2 <= lam <= 1.
bool is_valid_pair(const ExponentPair& p);

/// Validating constructor; throws DomainViolation.
ExponentPair make_pair(const Rational& kappa, const Rational& lam);

/// A(k, l) = (k / (2k + 2), (k + l + 1) / (2k + 2)).
ExponentPair a_process(const ExponentPair& p);

/// B(k, l) = (l - 1/2, k + 1/2).
ExponentPair b_process(const ExponentPair& p);

/// Expands exponent shorthand: "BA^2B" -> "BAAB". Throws MalformedWord.
std::string expand_word(std::string_view word);

/// Applies the word to (0, 1), rightmost letter first.
ExponentPair apply_word(std::string_view word);

double to_double(const Rational& r);
std::string to_string(const Rational& r);

/// lambda1^kappa a^lam + 1/lambda1.
double gk_bound(double lambda1, double a, const ExponentPair& p);

/// h^kappa X^{kappa d - kappa + lam} + 1/(h X^{d-1}).
double td_bound(double h, double X, double d, const ExponentPair& p);

struct VdcBounds {
  double first = 0.0;   // 1/lambda1
  double second = 0.0;  // A lambda2^{1/2} + lambda2^{-1/2}
};

VdcBounds vdc_bounds(double A, double lambda1, double lambda2);

struct ZhaiBounds {
  double R = 0.0;
  std::optional<double> bound1;  // M R^{-1/2}, when R/M <= 1/8
  std::optional<double> bound2;  // R^{1/2} + M R^{-1/3}, when M <= R <= M^2
};

ZhaiBounds zhai_bounds(double M, double a, double b, double g1, double g2);

struct WeylCheck {
  double lhs = 0.0;
  double rhs = 0.0;
};

/// lhs = |sum z|^2; rhs = (1 + n/Q) sum_{|q| <= Q} (1 - |q|/Q) sum_k z_{k+q} conj(z_k).
WeylCheck weyl_vdc_check(std::span<const ComplexValue> z, double Q);

/// (P + 1)(D + 1/Delta) log(2 + 1/Delta).
double kratzel_bound(double P, double D, double Delta);

struct BoundReport {
  std::size_t samples = 0;
  double max_ratio = 0.0;
  std::string arg_max;
};

// Empirical fits: each draws a seeded family, evaluates the sum directly and
// records the largest ratio |sum| / bound.
BoundReport check_vdc_first(std::uint64_t seed, std::size_t trials = 100, unsigned threads = 1);
BoundReport check_vdc_second(std::uint64_t seed, std::size_t trials = 100, unsigned threads = 1);
BoundReport check_zhai_first(std::uint64_t seed, std::size_t trials = 50, unsigned threads = 1);
BoundReport check_kratzel(std::uint64_t seed, std::size_t trials = 100, unsigned threads = 1);
/// |T_d(h)| / td_bound over 20 log-spaced h in [1e-4, 1], with T_d summed over (lambda X, X].
BoundReport check_td(double X, double d, double lambda_cut, const ExponentPair& p, std::size_t points = 20,
                     unsigned threads = 1);

struct WeylSweep {
  std::size_t trials = 0;
  std::size_t violations = 0;  // lhs > rhs + tol
  double max_excess = 0.0;     // max of lhs - rhs
};

WeylSweep check_weyl(std::uint64_t seed, std::size_t trials = 10'000, double tol = 1e-9, unsigned threads = 1);

}  // namespace fiveprime
