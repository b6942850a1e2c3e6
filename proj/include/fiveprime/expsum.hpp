#pragma once

// Gaussian kernels and the exponential sums S(x, y) = sum log p e(p^c x + p^d y)
// and T_alpha(x) = sum e(n^alpha x), plus grid evaluation and mean-square
// integrals along the x direction.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "fiveprime/numeric.hpp"
#include "fiveprime/primes.hpp"

namespace fiveprime {

inline constexpr std::size_t kMaxGridPoints = 100'000'000;

/// exp(-pi t^2).
double phi(double t);

/// delta * phi(delta t); throws NonPositiveDelta unless delta > 0.
double phi_delta(double delta, double t);

struct KernelComparison {
  double lhs = 0.0;  // indicator of [-1, 1] at t / rho
  double rhs = 0.0;  // phi(t) - exp(-pi rho^2)
};

KernelComparison indicator_vs_kernel(double t, double rho);

/// Trapezoid approximation of the integral of phi(t) e(-x t) over |t| <= half_width.
ComplexValue kernel_transform(double x, double half_width = 8.0, double step = 1e-3);

/// S(x, y) over the table. The table must have been built for (c, d).
ComplexValue eval_S(const PrimeTable& table, double c, double d, double x, double y);

/// sum over lambda_cut*X < n <= X of e(n^alpha x).
ComplexValue eval_T(double X, double lambda_cut, double alpha, double x);

/// Cached split-precision powers n^alpha for repeated T_alpha evaluation.
struct MonomialTable {
  std::uint64_t lo = 0;  // range is lo < n <= hi
  std::uint64_t hi = 0;
  double alpha = 0.0;
  std::vector<DoubleDouble> powers;
};

MonomialTable monomial_table(double X, double lambda_cut, double alpha);
ComplexValue eval_T(const MonomialTable& table, double x);

struct GridSpec {
  double x_min = 0.0;
  double x_max = 0.0;
  std::size_t nx = 1;
  double y_min = 0.0;
  double y_max = 0.0;
  std::size_t ny = 1;

  /// Evenly spaced points, endpoints included; a single point sits at the minimum.
  std::vector<double> x_points() const;
  std::vector<double> y_points() const;
};

struct ExpSumGrid {
  std::vector<double> x_points;
  std::vector<double> y_points;
  std::vector<ComplexValue> values;  // row-major, row index = x
  std::string params_digest;

  const ComplexValue& at(std::size_t i, std::size_t j) const { return values[i * y_points.size() + j]; }
};

ExpSumGrid grid_eval(const PrimeTable& table, double c, double d, const GridSpec& spec, unsigned threads = 1);

/// CSV with header x,y,re,im plus <path>.json carrying params_digest.
void write_grid(const ExpSumGrid& grid, const std::filesystem::path& csv_path);

/// Largest step accepted by mean_square_x: 1/(20 (X^c - (lambda X)^c)).
double max_mean_square_step(const PrimeTable& table, double c);

/// Trapezoid approximation of the integral of |S(x, y)|^2 over |x| <= half_width.
/// The actual step is half_width / ceil(half_width / step).
double mean_square_x(const PrimeTable& table, double c, double d, double y, double half_width, double step,
                     unsigned threads = 1);

/// Exact value of the same integral by expanding |S|^2 and integrating term by term.
double mean_square_x_exact(const PrimeTable& table, double c, double d, double y, double half_width);

/// Trapezoid approximation of the integral of |S(x, y)|^2 phi_eps(x) over |x| <= half_width.
double mean_square_weighted(const PrimeTable& table, double c, double d, double y, double eps, double half_width,
                            double step, unsigned threads = 1);

/// The same integral over the whole line in closed form:
/// sum over (p1, p2) of log p1 log p2 e((p1^d - p2^d) y) phi((p1^c - p2^c) / eps).
double mean_square_weighted_exact(const PrimeTable& table, double c, double d, double y, double eps);

}  // namespace fiveprime
