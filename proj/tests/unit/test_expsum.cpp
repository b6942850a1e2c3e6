#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "doctest.h"
#include "fiveprime/error.hpp"
#include "fiveprime/expsum.hpp"

using namespace fiveprime;
using Big = boost::multiprecision::cpp_bin_float_50;

namespace {

// Direct sum of w(n) e(n^g1 x + n^g2 y) at 50 digits.
template <class Range, class Weight>
ComplexValue big_sum(const Range& ns, Weight w, double g1, double g2, double x, double y) {
  Big re = 0, im = 0;
  const Big two_pi = 2 * boost::math::constants::pi<Big>();
  for (auto n : ns) {
    Big t = Big(x) * boost::multiprecision::pow(Big(n), Big(g1)) + Big(y) * boost::multiprecision::pow(Big(n), Big(g2));
    t -= boost::multiprecision::floor(t);
    re += Big(w(n)) * boost::multiprecision::cos(two_pi * t);
    im += Big(w(n)) * boost::multiprecision::sin(two_pi * t);
  }
  return {static_cast<double>(re), static_cast<double>(im)};
}

}  // namespace

TEST_CASE("kernel values") {
  CHECK(phi(0.0) == 1.0);
  CHECK(phi(1.0) == doctest::Approx(0.0432139).epsilon(1e-6));
  for (double t = -1.0; t <= 1.0; t += 1e-3) CHECK(phi(t) >= std::exp(-std::numbers::pi) * (1 - 1e-15));
  CHECK(phi_delta(1.0, 0.7) == phi(0.7));
  CHECK(phi_delta(2.0, 0.0) == 2.0);
  CHECK_THROWS_AS(phi_delta(0.0, 1.0), Error);
}

TEST_CASE("phi_delta integrates to one") {
  for (double delta : {0.5, 1.0, 2.0}) {
    double w = 8.0 / delta, h = 1e-3 / delta, s = 0.0;
    long n = std::lround(w / h);
    for (long k = -n; k <= n; ++k) s += (std::abs(k) == n ? 0.5 : 1.0) * phi_delta(delta, k * h);
    CHECK(std::fabs(s * h - 1.0) < 1e-8);
  }
}

TEST_CASE("indicator versus kernel") {
  KernelComparison a = indicator_vs_kernel(0.0, 1.0);
  CHECK(a.lhs == 1.0);
  CHECK(a.rhs == doctest::Approx(1.0 - std::exp(-std::numbers::pi)));
  KernelComparison b = indicator_vs_kernel(2.0, 1.0);
  CHECK(b.lhs == 0.0);
  CHECK(b.rhs < 0.0);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> ut(-10.0, 10.0), ur(-3.0, 1.0);
  for (int i = 0; i < 100000; ++i) {
    KernelComparison k = indicator_vs_kernel(ut(rng), std::pow(10.0, ur(rng)));
    REQUIRE(k.lhs >= k.rhs);
  }
}

TEST_CASE("kernel self duality") {
  for (double x : {0.0, 0.5, 1.0, 2.0}) {
    ComplexValue v = kernel_transform(x);
    CHECK(std::fabs(v.real() - phi(x)) < 1e-8);
    CHECK(std::fabs(v.imag()) < 1e-8);
  }
}

TEST_CASE("S at the origin, conjugate symmetry and the triangle bound") {
  PrimeTable t = sieve(2e4, 0.1, 1.03, 1.01);
  double W = chebyshev_weight(t);
  ComplexValue s0 = eval_S(t, 1.03, 1.01, 0.0, 0.0);
  CHECK(s0.real() == doctest::Approx(W).epsilon(1e-15));
  CHECK(s0.imag() == 0.0);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 10000; ++i) {
    double x = u(rng), y = u(rng);
    ComplexValue a = eval_S(t, 1.03, 1.01, x, y);
    REQUIRE(std::abs(a) <= W * (1 + 1e-14));
    if (i < 200) REQUIRE(std::abs(a - std::conj(eval_S(t, 1.03, 1.01, -x, -y))) < 1e-12);
  }
  CHECK_THROWS_AS(eval_S(t, 1.04, 1.01, 0.1, 0.1), Error);
}

TEST_CASE("S matches an extended precision direct sum") {
  PrimeTable t = sieve(40.0, 0.5, 1.03, 1.01);
  auto logw = [](std::uint64_t p) { return boost::multiprecision::log(Big(p)); };
  ComplexValue ref = big_sum(t.primes, logw, 1.03, 1.01, 0.1, 0.05);
  CHECK(std::abs(eval_S(t, 1.03, 1.01, 0.1, 0.05) - ref) < 1e-10);

  PrimeTable big = sieve(1e5, 0.1, 1.03, 1.01);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-0.3, 0.3);
  for (int i = 0; i < 3; ++i) {
    double x = u(rng), y = u(rng);
    ComplexValue r = big_sum(big.primes, logw, 1.03, 1.01, x, y);
    CHECK(std::abs(eval_S(big, 1.03, 1.01, x, y) - r) < 1e-8);
  }
}

TEST_CASE("T_alpha") {
  CHECK(eval_T(100.0, 0.1, 1.01, 0.0).real() == 90.0);
  std::vector<int> ns;
  for (int n = 11; n <= 20; ++n) ns.push_back(n);
  ComplexValue ref = big_sum(ns, [](int) { return Big(1); }, 1.01, 1.0, 0.3, 0.0);
  CHECK(std::abs(eval_T(20.0, 0.5, 1.01, 0.3) - ref) < 1e-10);
  CHECK(std::abs(eval_T(1e4, 0.1, 1.01, 0.0123)) == doctest::Approx(std::abs(eval_T(1e4, 0.1, 1.01, -0.0123))));
  MonomialTable m = monomial_table(1e4, 0.1, 1.01);
  CHECK(std::abs(eval_T(m, 0.0123) - eval_T(1e4, 0.1, 1.01, 0.0123)) < 1e-12);
}

TEST_CASE("grid evaluation") {
  PrimeTable t = sieve(1e4, 0.1, 1.03, 1.01);
  GridSpec one;
  ExpSumGrid g1 = grid_eval(t, 1.03, 1.01, one);
  REQUIRE(g1.values.size() == 1);
  CHECK(g1.values[0] == eval_S(t, 1.03, 1.01, 0.0, 0.0));

  GridSpec spec{1e-5, 2e-3, 64, -2e-3, 1e-3, 64};
  ExpSumGrid g = grid_eval(t, 1.03, 1.01, spec, 3);
  ExpSumGrid h = grid_eval(t, 1.03, 1.01, spec, 1);
  double W = chebyshev_weight(t);
  for (std::size_t i = 0; i < 64; ++i) {
    for (std::size_t j = 0; j < 64; ++j) {
      REQUIRE(g.at(i, j) == eval_S(t, 1.03, 1.01, g.x_points[i], g.y_points[j]));
      REQUIRE(g.at(i, j) == h.at(i, j));
      REQUIRE(std::abs(g.at(i, j)) <= W * (1 + 1e-14));
    }
  }
  CHECK(g.params_digest == h.params_digest);

  auto path = std::filesystem::temp_directory_path() / "fiveprime_grid.csv";
  write_grid(g, path);
  std::ifstream is(path);
  std::string header;
  std::getline(is, header);
  CHECK(header == "x,y,re,im");
  CHECK(std::filesystem::exists(path.string() + ".json"));
  std::filesystem::remove(path);
  std::filesystem::remove(path.string() + ".json");

  GridSpec huge{0, 1, 20000, 0, 1, 20000};
  CHECK_THROWS_AS(grid_eval(t, 1.03, 1.01, huge), Error);
}

TEST_CASE("mean square along x") {
  PrimeTable t = sieve(4096.0, 0.1, 1.05, 1.02);
  double h = max_mean_square_step(t, 1.05);
  double w = std::pow(4096.0, 0.75 - 1.05 - 0.01);
  double v = mean_square_x(t, 1.05, 1.02, 0.0, w, h);
  double exact = mean_square_x_exact(t, 1.05, 1.02, 0.0, w);
  CHECK(v == doctest::Approx(exact).epsilon(1e-6));
  double halved = mean_square_x(t, 1.05, 1.02, 0.0, w, h / 2);
  CHECK(std::fabs(halved - v) <= 0.01 * std::fabs(v));
  double W = chebyshev_weight(t);
  for (double tiny : {1e-9, 1e-12}) {
    CHECK(mean_square_x(t, 1.05, 1.02, 0.0, tiny, h) == doctest::Approx(2.0 * tiny * W * W).epsilon(1e-6));
  }
  CHECK(mean_square_x(t, 1.05, 1.02, 0.3, w, h, 2) == doctest::Approx(mean_square_x_exact(t, 1.05, 1.02, 0.3, w)).epsilon(1e-6));
  CHECK_THROWS_AS(mean_square_x(t, 1.05, 1.02, 0.0, w, 4 * h), Error);
}

TEST_CASE("weighted mean square agrees with its closed form") {
  PrimeTable t = sieve(2048.0, 0.1, 1.03, 1.01);
  double eps = 0.05;
  double h = max_mean_square_step(t, 1.03);
  double v = mean_square_weighted(t, 1.03, 1.01, 0.0, eps, 8.0 / eps, h);
  CHECK(v == doctest::Approx(mean_square_weighted_exact(t, 1.03, 1.01, 0.0, eps)).epsilon(1e-8));
}

TEST_CASE("weighted mean square stays within a factor 5 band of X log^4 X") {
  double lo = 1e300, hi = 0.0;
  for (int e = 12; e <= 15; ++e) {
    double X = std::ldexp(1.0, e);
    PrimeTable t = sieve(X, 0.1, 1.03, 1.01);
    double eps = std::pow(X, -(39.0 / 37.0 - 1.03));
    double ratio = mean_square_weighted_exact(t, 1.03, 1.01, 0.0, eps) / (X * std::pow(std::log(X), 4));
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  CHECK(hi / lo < 5.0);
}
