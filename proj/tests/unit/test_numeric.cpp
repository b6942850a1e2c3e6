#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "doctest.h"
#include "fiveprime/numeric.hpp"

using namespace fiveprime;
using Big = boost::multiprecision::cpp_bin_float_50;

TEST_CASE("two_sum and two_prod are error free") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 2000; ++i) {
    double a = u(rng), b = u(rng) * 1e-9;
    DoubleDouble s = two_sum(a, b);
    CHECK(Big(s.hi) + Big(s.lo) == Big(a) + Big(b));
    DoubleDouble p = two_prod(a, b);
    CHECK(Big(p.hi) + Big(p.lo) == Big(a) * Big(b));
  }
}

TEST_CASE("pow_split carries about 106 bits") {
  for (double base : {2.0, 11.0, 997.0, 65537.0, 999983.0}) {
    for (double e : {1.01, 1.03, 1.05, 0.5}) {
      DoubleDouble v = pow_split(base, e);
      Big ref = boost::multiprecision::pow(Big(base), Big(e));
      Big got = Big(v.hi) + Big(v.lo);
      CHECK(static_cast<double>(boost::multiprecision::abs(got - ref) / ref) < 1e-30);
    }
  }
}

TEST_CASE("reduce_phase matches an extended precision reduction") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ux(-50.0, 50.0);
  std::uniform_int_distribution<int> up(2, 1'000'000);
  for (int i = 0; i < 500; ++i) {
    double x = ux(rng);
    double p = up(rng);
    DoubleDouble v = pow_split(p, 1.03);
    Big prod = Big(x) * (Big(v.hi) + Big(v.lo));
    Big frac = prod - boost::multiprecision::round(prod);
    double got = reduce_phase(x, v);
    CHECK(got >= -0.5);
    CHECK(got <= 0.5);
    double diff = std::fabs(got - static_cast<double>(frac));
    CHECK(std::min(diff, 1.0 - diff) < 1e-9);
  }
}

TEST_CASE("pairwise_sum_n uses the same tree as pairwise_sum") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (std::size_t n : {0u, 1u, 16u, 17u, 100u, 1023u}) {
    std::vector<double> v(n);
    for (double& x : v) x = u(rng) * std::pow(10.0, u(rng) * 8);
    double a = pairwise_sum(v);
    double b = pairwise_sum_n<double>(0, n, [&](std::size_t i) { return v[i]; });
    CHECK(a == b);
  }
}

TEST_CASE("FixedPointSum is order independent") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1e6);
  std::vector<double> v(5000);
  for (double& x : v) x = u(rng);
  for (int trial = 0; trial < 20; ++trial) {
    FixedPointSum a, b;
    for (double x : v) a.add(x);
    std::shuffle(v.begin(), v.end(), rng);
    std::size_t cut = rng() % v.size();
    FixedPointSum left, right;
    for (std::size_t i = 0; i < cut; ++i) left.add(v[i]);
    for (std::size_t i = cut; i < v.size(); ++i) right.add(v[i]);
    right.merge(left);
    CHECK(a == right);
    CHECK(a.value() == right.value());
  }
  FixedPointSum rep, loop;
  rep.add_repeated(3.25, 7);
  for (int i = 0; i < 7; ++i) loop.add(3.25);
  CHECK(rep == loop);
}

TEST_CASE("CompensatedSum recovers cancelled mass") {
  CompensatedSum s;
  s.add(1e16);
  s.add(1.0);
  s.add(-1e16);
  CHECK(s.value() == 1.0);
}

TEST_CASE("parallel_chunks covers the range once") {
  for (unsigned threads : {1u, 2u, 3u, 8u}) {
    std::vector<int> hits(101, 0);
    parallel_chunks(hits.size(), threads, [&](std::size_t b, std::size_t e, std::size_t) {
      for (std::size_t i = b; i < e; ++i) ++hits[i];
    });
    CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
  }
}

TEST_CASE("fnv1a reference values") {
  CHECK(fnv1a(std::string_view("")) == 14695981039346656037ull);
  CHECK(fnv1a(std::string_view("a")) == 0xaf63dc4c8601ec8cull);
}
