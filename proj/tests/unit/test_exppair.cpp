#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "doctest.h"
#include "fiveprime/error.hpp"
#include "fiveprime/exppair.hpp"

using namespace fiveprime;

namespace {

Rational q(long n, long d) { return Rational(n, d); }

ExponentPair random_pair(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> den(1, 60);
  long dk = den(rng), dl = den(rng);
  std::uniform_int_distribution<long> nk(0, dk / 2);
  long kn = nk(rng);
  std::uniform_int_distribution<long> nl((dl + 1) / 2, dl);
  long ln = nl(rng);
  return fiveprime::make_pair(q(kn, dk), q(ln, dl));
}

}  // namespace

TEST_CASE("A and B processes on reference pairs") {
  ExponentPair trivial{0, 1};
  CHECK(a_process(trivial) == ExponentPair{0, 1});
  CHECK(a_process(ExponentPair{q(1, 2), q(1, 2)}) == ExponentPair{q(1, 6), q(2, 3)});
  CHECK(b_process(trivial) == ExponentPair{q(1, 2), q(1, 2)});
  CHECK(b_process(ExponentPair{q(1, 14), q(11, 14)}) == ExponentPair{q(2, 7), q(4, 7)});
}

TEST_CASE("words") {
  ExponentPair p = apply_word("BAAB");
  CHECK(p.kappa == q(2, 7));
  CHECK(p.lam == q(4, 7));
  CHECK(apply_word("BA^2B") == p);
  CHECK(apply_word("B") == ExponentPair{q(1, 2), q(1, 2)});
  CHECK(expand_word("BA^2B") == "BAAB");
  CHECK(expand_word("A^3B^1") == "AAAB");
  CHECK(to_string(p.kappa) == "2/7");
  CHECK(to_double(p.lam) == doctest::Approx(4.0 / 7.0));
  for (const char* bad : {"", "BXA", "A^", "A^0", "^2", "A^99999"}) CHECK_THROWS_AS(apply_word(bad), Error);
}

TEST_CASE("A preserves validity and B is an involution over random rational pairs") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 1000; ++i) {
    ExponentPair p = random_pair(rng);
    REQUIRE(is_valid_pair(a_process(p)));
    REQUIRE(b_process(b_process(p)) == p);
    REQUIRE(is_valid_pair(b_process(p)));
  }
  CHECK_THROWS_AS(fiveprime::make_pair(q(3, 5), q(4, 5)), Error);
}

TEST_CASE("bound formulas") {
  ExponentPair half{q(1, 2), q(1, 2)};
  CHECK(gk_bound(1.0, 1.0, apply_word("BAAB")) == doctest::Approx(2.0));
  CHECK(gk_bound(4.0, 16.0, half) == doctest::Approx(8.25));
  double prev = 0.0;
  for (double a = 1.0; a < 1e6; a *= 3.7) {
    double v = gk_bound(2.5, a, half);
    CHECK(v >= prev);
    prev = v;
  }
  double X = 1e4, d = 1.01, h = 0.01;
  ExponentPair p = apply_word("BAAB");
  CHECK(td_bound(h, X, d, p) ==
        doctest::Approx(std::pow(h, 2.0 / 7.0) * std::pow(X, 2.0 * (d + 1.0) / 7.0) + 1.0 / (h * std::pow(X, d - 1.0))));
  double hx = std::pow(X, -d);
  CHECK(td_bound(hx, X, d, p) - std::pow(hx, 2.0 / 7.0) * std::pow(X, 2.0 * (d + 1.0) / 7.0) ==
        doctest::Approx(X));
  VdcBounds v = vdc_bounds(100.0, 0.25, 1e-4);
  CHECK(v.first == 4.0);
  CHECK(v.second == doctest::Approx(1.0 + 100.0));
  CHECK_THROWS_AS(vdc_bounds(4.0, 0.25, 0.1), Error);
  CHECK_THROWS_AS(vdc_bounds(10.0, 0.75, 0.1), Error);
}

TEST_CASE("Zhai bounds") {
  ZhaiBounds z = zhai_bounds(100.0, 1e-4, -1e-4, 1.05, 1.02);
  CHECK(z.R == doctest::Approx(1e-4 * (std::pow(100.0, 1.05) + std::pow(100.0, 1.02))));
  REQUIRE(z.bound1.has_value());
  CHECK(*z.bound1 == doctest::Approx(100.0 / std::sqrt(z.R)));
  CHECK_THROWS_AS(zhai_bounds(100.0, 0.0, 1e-4, 1.05, 1.02), Error);
}

TEST_CASE("Weyl-van der Corput inequality examples") {
  std::vector<ComplexValue> ones(25, ComplexValue(1.0, 0.0));
  WeylCheck w = weyl_vdc_check(ones, 25.0);
  CHECK(w.lhs == doctest::Approx(625.0));
  CHECK(w.rhs >= w.lhs - 1e-9);
  std::vector<ComplexValue> one{ComplexValue(0.3, -0.4)};
  WeylCheck s = weyl_vdc_check(one, 0.7);
  CHECK(s.lhs == doctest::Approx(0.25));
  CHECK(s.rhs >= s.lhs);
  WeylSweep sweep = check_weyl(4242, 2000);
  CHECK(sweep.trials == 2000);
  CHECK(sweep.violations == 0);
}

TEST_CASE("Kratzel bound") {
  CHECK(kratzel_bound(0.0, 1.0, 1.0) == doctest::Approx(2.0 * std::log(3.0)));
  CHECK(kratzel_bound(10.0, 2.0, 0.1) < kratzel_bound(10.0, 3.0, 0.1));
}

TEST_CASE("empirical constants are finite and below their ceilings") {
  BoundReport r1 = check_vdc_first(1, 100);
  BoundReport r2 = check_vdc_second(1, 100);
  BoundReport r3 = check_zhai_first(1, 50);
  BoundReport r4 = check_kratzel(1, 100);
  BoundReport r5 = check_td(1e4, 1.01, 0.1, apply_word("BAAB"));
  CHECK(r1.samples == 100);
  CHECK(r5.samples == 20);
  for (const BoundReport* r : {&r1, &r2, &r3, &r4, &r5}) {
    CHECK(std::isfinite(r->max_ratio));
    CHECK(r->max_ratio > 0.0);
  }
  CHECK(r1.max_ratio <= 5.0);
  CHECK(r2.max_ratio <= 10.0);
  CHECK(r3.max_ratio <= 10.0);
  CHECK(r4.max_ratio <= 10.0);
  CHECK(r5.max_ratio <= 10.0);
  BoundReport again = check_vdc_second(1, 100, 3);
  CHECK(again.max_ratio == r2.max_ratio);
}
