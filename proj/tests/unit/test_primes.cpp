#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>
#include <vector>

#include "doctest.h"
#include "fiveprime/error.hpp"
#include "fiveprime/primes.hpp"

using namespace fiveprime;

namespace {

bool is_prime_trial(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q = 2; q * q <= n; ++q) {
    if (n % q == 0) return false;
  }
  return true;
}

std::vector<std::uint64_t> trial_primes(std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = lo + 1; n <= hi; ++n) {
    if (is_prime_trial(n)) out.push_back(n);
  }
  return out;
}

int mu_by_factoring(std::uint64_t n) {
  int sign = 1;
  for (std::uint64_t q = 2; q * q <= n; ++q) {
    if (n % q == 0) {
      n /= q;
      if (n % q == 0) return 0;
      sign = -sign;
    }
  }
  if (n > 1) sign = -sign;
  return sign;
}

double mangoldt_by_factoring(std::uint64_t n) {
  for (std::uint64_t q = 2; q * q <= n; ++q) {
    if (n % q == 0) {
      while (n % q == 0) n /= q;
      return n == 1 ? std::log(static_cast<double>(q)) : 0.0;
    }
  }
  return n > 1 ? std::log(static_cast<double>(n)) : 0.0;
}

}  // namespace

TEST_CASE("small tables match trial division") {
  CHECK(sieve(40.0, 0.5, 1.03, 1.01).primes == std::vector<std::uint64_t>{23, 29, 31, 37});
  CHECK(sieve(10.0, 0.9, 1.03, 1.01).empty());
  CHECK(sieve(100.0, 0.1, 1.03, 1.01).size() == 21);
}

TEST_CASE("random ranges match trial division, with and without threads") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> ux(20.0, 3e5), ul(0.01, 0.95);
  for (int trial = 0; trial < 25; ++trial) {
    double X = ux(rng), lambda = ul(rng);
    if (lambda * X < 2.0) continue;
    PrimeTable t = sieve(X, lambda, 1.03, 1.01, 1 + trial % 3);
    CHECK(t.primes == trial_primes(t.lower(), t.upper()));
  }
}

TEST_CASE("segment boundaries") {
  double X = 3.0 * static_cast<double>(kSieveSegment) + 17.0;
  PrimeTable a = sieve(X, 0.5, 1.03, 1.01, 1);
  PrimeTable b = sieve(X, 0.5, 1.03, 1.01, 4);
  CHECK(a.primes == b.primes);
  CHECK(a.primes == trial_primes(a.lower(), a.upper()));
  CHECK(table_digest(a) == table_digest(b));
}

TEST_CASE("invalid ranges") {
  CHECK_THROWS_AS(sieve(2e9, 0.1, 1.03, 1.01), Error);
  CHECK_THROWS_AS(sieve(100.0, 0.0, 1.03, 1.01), Error);
  CHECK_THROWS_AS(sieve(10.0, 0.1, 1.03, 1.01), Error);
}

TEST_CASE("split powers round trip to the prime") {
  PrimeTable t = sieve(2e5, 0.1, 1.03, 1.01);
  for (std::size_t i = 0; i < t.size(); ++i) {
    double p = static_cast<double>(t.primes[i]);
    REQUIRE(std::nearbyint(std::pow(t.pc[i].hi, 1.0 / 1.03)) == p);
    REQUIRE(std::nearbyint(std::pow(t.pd[i].hi, 1.0 / 1.01)) == p);
    REQUIRE(std::fabs(t.pc[i].lo) <= std::ldexp(std::fabs(t.pc[i].hi), -52));
    REQUIRE(t.logp[i] == std::log(p));
  }
}

TEST_CASE("chebyshev weight") {
  double direct = 0.0;
  for (std::uint64_t p : trial_primes(10, 100)) direct += std::log(static_cast<double>(p));
  CHECK(direct == doctest::Approx(78.3813).epsilon(1e-6));
  CHECK(chebyshev_weight(sieve(100.0, 0.1, 1.03, 1.01)) == doctest::Approx(direct).epsilon(1e-15));
  CHECK(chebyshev_weight(sieve(10.0, 0.9, 1.03, 1.01)) == 0.0);
  double big = chebyshev_weight(sieve(1e6, 0.1, 1.03, 1.01));
  CHECK(std::fabs(big - 0.9e6) < 0.05 * 0.9e6);
}

TEST_CASE("arithmetic tables match factorization") {
  ArithmeticTables a = arithmetic_tables(20000);
  CHECK(a.lambda(8) == doctest::Approx(std::log(2.0)));
  CHECK(a.mu(30) == -1);
  CHECK(a.mu(1) == 1);
  CHECK(a.lambda(1) == 0.0);
  double psi100 = 0.0;
  for (std::uint64_t n = 1; n <= 100; ++n) psi100 += a.lambda(n);
  CHECK(psi100 == doctest::Approx(94.045).epsilon(1e-4));
  for (std::uint64_t n = 1; n <= 20000; ++n) {
    REQUIRE(a.mu(n) == mu_by_factoring(n));
    REQUIRE(a.lambda(n) == doctest::Approx(mangoldt_by_factoring(n)).epsilon(1e-14));
  }
  CHECK_THROWS_AS(arithmetic_tables(20'000'000), Error);
}

TEST_CASE("psi exceeds theta by at most sqrt(N) log^2 N") {
  const std::uint64_t N = 1'000'000;
  ArithmeticTables a = arithmetic_tables(N);
  double psi = 0.0, theta = 0.0;
  std::uint64_t next = 1000;
  for (std::uint64_t n = 2; n <= N; ++n) {
    psi += a.lambda(n);
    if (a.lambda(n) > 0.0 && a.mu(n) == -1) theta += a.lambda(n);
    if (n == next) {
      double nd = static_cast<double>(n);
      CHECK(psi >= theta);
      CHECK(psi - theta <= std::sqrt(nd) * std::log(nd) * std::log(nd));
      next *= 10;
    }
  }
}

TEST_CASE("cache round trip and exponent mismatch") {
  PrimeTable t = sieve(5e4, 0.2, 1.03, 1.01);
  auto path = std::filesystem::temp_directory_path() / "fiveprime_test_cache.bin";
  save_cache(t, path);
  PrimeTable u = load_cache(path, 1.03, 1.01);
  CHECK(u.primes == t.primes);
  CHECK(table_digest(u) == table_digest(t));
  for (std::size_t i = 0; i < t.size(); ++i) {
    REQUIRE(u.pc[i].hi == t.pc[i].hi);
    REQUIRE(u.pc[i].lo == t.pc[i].lo);
    REQUIRE(u.pd[i].lo == t.pd[i].lo);
  }
  CHECK_THROWS_AS(load_cache(path, 1.04, 1.01), Error);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_cache(path, 1.03, 1.01), Error);
}
