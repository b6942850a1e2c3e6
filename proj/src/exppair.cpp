#include "fiveprime/exppair.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

#include "fiveprime/error.hpp"

namespace fiveprime {

namespace {

void domain(bool ok, const char* what) {
  if (!ok) throw Error(ErrorKind::DomainViolation, what);
}

const Rational kHalf(1, 2);

}  // namespace

bool is_valid_pair(const ExponentPair& p) {
  return p.kappa >= 0 && p.kappa <= kHalf && p.lam >= kHalf && p.lam <= 1;
}

ExponentPair make_pair(const Rational& kappa, const Rational& lam) {
  ExponentPair p{kappa, lam};
  domain(is_valid_pair(p), "exponent pair requires 0 <= kappa <= 1/2 <= lam <= 1");
  return p;
}

ExponentPair a_process(const ExponentPair& p) {
  Rational den = 2 * p.kappa + 2;
  return {p.kappa / den, (p.kappa + p.lam + 1) / den};
}

ExponentPair b_process(const ExponentPair& p) { return {p.lam - kHalf, p.kappa + kHalf}; }

std::string expand_word(std::string_view word) {
  if (word.empty()) throw Error(ErrorKind::MalformedWord, "empty process word");
  std::string out;
  std::size_t i = 0;
  while (i < word.size()) {
    char letter = word[i++];
    if (letter != 'A' && letter != 'B') {
      throw Error(ErrorKind::MalformedWord, std::string("unexpected character '") + letter + "' in word");
    }
    std::size_t repeat = 1;
    if (i < word.size() && word[i] == '^') {
      ++i;
      std::size_t start = i;
      repeat = 0;
      while (i < word.size() && std::isdigit(static_cast<unsigned char>(word[i]))) {
        repeat = repeat * 10 + static_cast<std::size_t>(word[i] - '0');
        if (repeat > 10'000) throw Error(ErrorKind::MalformedWord, "exponent too large in word");
        ++i;
      }
      if (i == start || repeat == 0) throw Error(ErrorKind::MalformedWord, "bad exponent in word");
    }
    out.append(repeat, letter);
  }
  return out;
}

ExponentPair apply_word(std::string_view word) {
  std::string letters = expand_word(word);
  ExponentPair p{Rational(0), Rational(1)};
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
    p = (*it == 'A') ? a_process(p) : b_process(p);
  }
  return p;
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

std::string to_string(const Rational& r) {
  std::ostringstream os;
  os << numerator(r);
  if (denominator(r) != 1) os << '/' << denominator(r);
  return os.str();
}

double gk_bound(double lambda1, double a, const ExponentPair& p) {
  domain(lambda1 > 0.0, "gk_bound requires lambda1 > 0");
  domain(a >= 1.0, "gk_bound requires a >= 1");
  return std::pow(lambda1, to_double(p.kappa)) * std::pow(a, to_double(p.lam)) + 1.0 / lambda1;
}

double td_bound(double h, double X, double d, const ExponentPair& p) {
  domain(h > 0.0, "td_bound requires h > 0");
  domain(X > 1.0, "td_bound requires X > 1");
  domain(d > 1.0, "td_bound requires d > 1");
  double k = to_double(p.kappa);
  double l = to_double(p.lam);
  return std::pow(h, k) * std::pow(X, k * d - k + l) + 1.0 / (h * std::pow(X, d - 1.0));
}

VdcBounds vdc_bounds(double A, double lambda1, double lambda2) {
  domain(A >= 5.0, "vdc_bounds requires A >= 5");
  domain(lambda1 > 0.0 && lambda1 <= 0.5, "vdc_bounds requires 0 < lambda1 <= 1/2");
  domain(lambda2 > 0.0, "vdc_bounds requires lambda2 > 0");
  return {1.0 / lambda1, A * std::sqrt(lambda2) + 1.0 / std::sqrt(lambda2)};
}

ZhaiBounds zhai_bounds(double M, double a, double b, double g1, double g2) {
  domain(M >= 5.0, "zhai_bounds requires M >= 5");
  domain(a != 0.0 && b != 0.0, "zhai_bounds requires a b != 0");
  domain(g1 > 1.0 && g1 < 2.0 && g2 > 1.0 && g2 < 2.0, "zhai_bounds requires 1 < g1, g2 < 2");
  domain(g1 != g2, "zhai_bounds requires g1 != g2");
  ZhaiBounds z;
  z.R = std::fabs(a) * std::pow(M, g1) + std::fabs(b) * std::pow(M, g2);
  if (z.R / M <= 0.125) z.bound1 = M / std::sqrt(z.R);
  if (M <= z.R && z.R <= M * M) z.bound2 = std::sqrt(z.R) + M / std::cbrt(z.R);
  return z;
}

WeylCheck weyl_vdc_check(std::span<const ComplexValue> z, double Q) {
  domain(Q > 0.0, "weyl_vdc_check requires Q > 0");
  domain(!z.empty(), "weyl_vdc_check requires a non-empty sequence");
  auto n = static_cast<std::ptrdiff_t>(z.size());
  WeylCheck w;
  w.lhs = std::norm(pairwise_sum(z));
  auto qmax = static_cast<std::ptrdiff_t>(std::min<double>(std::floor(Q), static_cast<double>(n - 1)));
  CompensatedSum acc;
  for (std::ptrdiff_t q = -qmax; q <= qmax; ++q) {
    double weight = 1.0 - static_cast<double>(std::abs(q)) / Q;
    CompensatedSum inner;
    for (std::ptrdiff_t k = std::max<std::ptrdiff_t>(0, -q); k < n && k + q < n; ++k) {
      inner.add((z[k + q] * std::conj(z[k])).real());
    }
    acc.add(weight * inner.value());
  }
  w.rhs = (1.0 + static_cast<double>(n) / Q) * acc.value();
  return w;
}

double kratzel_bound(double P, double D, double Delta) {
  domain(P >= 0.0, "kratzel_bound requires P >= 0");
  domain(D > 0.0, "kratzel_bound requires D > 0");
  domain(Delta > 0.0, "kratzel_bound requires Delta > 0");
  return (P + 1.0) * (D + 1.0 / Delta) * std::log(2.0 + 1.0 / Delta);
}

}  // namespace fiveprime
