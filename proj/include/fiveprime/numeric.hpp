#pragma once

// Floating-point building blocks shared by every module: error-free
// transformations, split-precision powers, phase reduction, reproducible
// reductions and a tiny deterministic thread helper.

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <numbers>
#include <span>
#include <string_view>
#include <thread>
#include <vector>

namespace fiveprime {

using ComplexValue = std::complex<double>;

/// Unevaluated sum hi + lo with |lo| <= ulp(hi)/2.
struct DoubleDouble {
  double hi = 0.0;
  double lo = 0.0;

  double value() const noexcept { return hi + lo; }
};

inline DoubleDouble two_sum(double a, double b) noexcept {
  double s = a + b;
  double bb = s - a;
  double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

inline DoubleDouble two_prod(double a, double b) noexcept {
  double p = a * b;
  return {p, std::fma(a, b, -p)};
}

/// Double-double product, relative error about 2^-104.
inline DoubleDouble dd_mul(DoubleDouble a, DoubleDouble b) noexcept {
  DoubleDouble p = two_prod(a.hi, b.hi);
  double lo = p.lo + (a.hi * b.lo + a.lo * b.hi);
  return two_sum(p.hi, lo);
}

/// base^expo rounded to about 2^-106 relative, evaluated in binary128.
DoubleDouble pow_split(double base, double expo);

/// (x * v) mod 1, mapped to [-1/2, 1/2]. The product is formed with an exact
/// two-product so the result keeps ~1e-16 absolute accuracy while |x*v| < 2^52.
inline double reduce_phase(double x, DoubleDouble v) noexcept {
  double p = x * v.hi;
  double e = std::fma(x, v.hi, -p);
  double f = p - std::nearbyint(p);
  double t = f + (e + x * v.lo);
  return t - std::nearbyint(t);
}

inline double wrap_unit(double t) noexcept { return t - std::nearbyint(t); }

/// e(t) = exp(2 pi i t).
inline ComplexValue unit_phasor(double t) noexcept {
  double a = 2.0 * std::numbers::pi * t;
  return {std::cos(a), std::sin(a)};
}

/// Balanced pairwise sum with a fixed reduction tree (depends only on size).
template <class T>
T pairwise_sum(std::span<const T> v) {
  if (v.size() <= 16) {
    T s{};
    for (const T& a : v) s += a;
    return s;
  }
  std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

template <class T>
T pairwise_sum(const std::vector<T>& v) {
  return pairwise_sum(std::span<const T>(v));
}

/// Same reduction tree as pairwise_sum, over f(begin) ... f(end - 1).
template <class T, class F>
T pairwise_sum_n(std::size_t begin, std::size_t end, const F& f) {
  if (end - begin <= 16) {
    T s{};
    for (std::size_t i = begin; i < end; ++i) s += f(i);
    return s;
  }
  std::size_t mid = begin + (end - begin) / 2;
  return pairwise_sum_n<T>(begin, mid, f) + pairwise_sum_n<T>(mid, end, f);
}

/// Neumaier compensated summation.
class CompensatedSum {
 public:
  void add(double v) noexcept {
    double t = sum_ + v;
    if (std::fabs(sum_) >= std::fabs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Order-independent accumulator: every addend is rounded once onto a 2^-40
/// grid and summed exactly in 128-bit integers, so any enumeration order (or
/// thread split) of the same multiset of addends gives the same total.
class FixedPointSum {
 public:
  static constexpr int kFracBits = 40;

  void add(double v) noexcept {
    acc_ += static_cast<__int128>(std::nearbyint(std::ldexp(v, kFracBits)));
  }
  /// Adds v `times` times; identical to calling add(v) repeatedly.
  void add_repeated(double v, std::uint64_t times) noexcept {
    acc_ += static_cast<__int128>(std::nearbyint(std::ldexp(v, kFracBits))) * static_cast<__int128>(times);
  }
  void merge(const FixedPointSum& o) noexcept { acc_ += o.acc_; }
  double value() const noexcept {
    return static_cast<double>(std::ldexp(static_cast<long double>(acc_), -kFracBits));
  }
  bool operator==(const FixedPointSum&) const = default;

 private:
  __int128 acc_ = 0;
};

/// Runs fn(begin, end, chunk) on `threads` contiguous chunks of [0, n).
/// Chunk c always covers the same indices for a given (n, threads).
void parallel_chunks(std::size_t n, unsigned threads,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

/// Number of chunks parallel_chunks will use.
inline std::size_t chunk_count(std::size_t n, unsigned threads) {
  if (n == 0) return 0;
  std::size_t t = threads == 0 ? 1 : threads;
  return t < n ? t : n;
}

/// 64-bit FNV-1a, used for config and table digests.
std::uint64_t fnv1a(std::span<const unsigned char> bytes, std::uint64_t seed = 14695981039346656037ull);
std::uint64_t fnv1a(std::string_view text, std::uint64_t seed = 14695981039346656037ull);

}  // namespace fiveprime
