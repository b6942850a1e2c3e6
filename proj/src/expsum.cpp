#include "fiveprime/expsum.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>

#include "json.hpp"

#include "fiveprime/error.hpp"

namespace fiveprime {

namespace {

constexpr std::size_t kLineBlock = 64;

void require_exponents(const PrimeTable& table, double c, double d) {
  if (table.c != c || table.d != d) {
    throw Error(ErrorKind::InvalidParams, "prime table was built for different exponents");
  }
}

// Fills out[k] = |S(x0 + k h, y)|^2 for k < out.size(). The per-prime phasors
// are advanced by a fixed rotation, anchored exactly at x0.
void line_block(const PrimeTable& table, double y, double x0, double h, std::vector<double>& out) {
  std::size_t n = table.size();
  std::vector<ComplexValue> z(n);
  std::vector<ComplexValue> rot(n);
  for (std::size_t i = 0; i < n; ++i) {
    z[i] = table.logp[i] * unit_phasor(reduce_phase(x0, table.pc[i]) + reduce_phase(y, table.pd[i]));
    rot[i] = unit_phasor(reduce_phase(h, table.pc[i]));
  }
  for (double& v : out) {
    ComplexValue s = pairwise_sum(std::span<const ComplexValue>(z));
    v = std::norm(s);
    for (std::size_t i = 0; i < n; ++i) z[i] *= rot[i];
  }
}

template <class Weight>
double integrate_line(const PrimeTable& table, double y, double half_width, double step, unsigned threads,
                      const Weight& weight) {
  if (half_width <= 0.0) return 0.0;
  auto half = static_cast<std::size_t>(std::ceil(half_width / step));
  double h = half_width / static_cast<double>(half);
  std::size_t points = 2 * half + 1;
  std::size_t blocks = (points + kLineBlock - 1) / kLineBlock;
  std::vector<double> block_sums(blocks);
  parallel_chunks(blocks, threads, [&](std::size_t b0, std::size_t b1, std::size_t) {
    std::vector<double> vals;
    for (std::size_t b = b0; b < b1; ++b) {
      std::size_t first = b * kLineBlock;
      std::size_t count = std::min(kLineBlock, points - first);
      vals.assign(count, 0.0);
      double x0 = -half_width + static_cast<double>(first) * h;
      line_block(table, y, x0, h, vals);
      block_sums[b] = pairwise_sum_n<double>(0, count, [&](std::size_t k) {
        std::size_t idx = first + k;
        double x = -half_width + static_cast<double>(idx) * h;
        double w = (idx == 0 || idx == points - 1) ? 0.5 * h : h;
        return w * weight(x) * vals[k];
      });
    }
  });
  return pairwise_sum(block_sums);
}

DoubleDouble dd_diff(DoubleDouble a, DoubleDouble b) {
  DoubleDouble s = two_sum(a.hi, -b.hi);
  return two_sum(s.hi, s.lo + (a.lo - b.lo));
}

template <class Kernel>
double pair_expansion(const PrimeTable& table, double y, const Kernel& kernel) {
  std::size_t n = table.size();
  return pairwise_sum_n<double>(0, n, [&](std::size_t i) {
    return pairwise_sum_n<double>(0, n, [&](std::size_t j) {
      double delta = dd_diff(table.pc[i], table.pc[j]).value();
      double phase = reduce_phase(y, dd_diff(table.pd[i], table.pd[j]));
      return table.logp[i] * table.logp[j] * std::cos(2.0 * std::numbers::pi * phase) * kernel(delta);
    });
  });
}

}  // namespace

double phi(double t) { return std::exp(-std::numbers::pi * t * t); }

double phi_delta(double delta, double t) {
  if (!(delta > 0.0)) throw Error(ErrorKind::NonPositiveDelta, "phi_delta requires delta > 0");
  return delta * phi(delta * t);
}

KernelComparison indicator_vs_kernel(double t, double rho) {
  if (!(rho > 0.0)) throw Error(ErrorKind::DomainViolation, "indicator_vs_kernel requires rho > 0");
  KernelComparison k;
  k.lhs = std::fabs(t / rho) <= 1.0 ? 1.0 : 0.0;
  k.rhs = phi(t) - std::exp(-std::numbers::pi * rho * rho);
  return k;
}

ComplexValue kernel_transform(double x, double half_width, double step) {
  if (!(half_width > 0.0 && step > 0.0)) {
    throw Error(ErrorKind::DomainViolation, "kernel_transform requires positive width and step");
  }
  auto intervals = static_cast<std::size_t>(std::ceil(2.0 * half_width / step));
  double h = 2.0 * half_width / static_cast<double>(intervals);
  return pairwise_sum_n<ComplexValue>(0, intervals + 1, [&](std::size_t k) {
    double t = -half_width + static_cast<double>(k) * h;
    double w = (k == 0 || k == intervals) ? 0.5 * h : h;
    return w * phi(t) * unit_phasor(-wrap_unit(x * t));
  });
}

ComplexValue eval_S(const PrimeTable& table, double c, double d, double x, double y) {
  require_exponents(table, c, d);
  return pairwise_sum_n<ComplexValue>(0, table.size(), [&](std::size_t i) {
    return table.logp[i] * unit_phasor(reduce_phase(x, table.pc[i]) + reduce_phase(y, table.pd[i]));
  });
}

MonomialTable monomial_table(double X, double lambda_cut, double alpha) {
  if (!(alpha > 0.0)) throw Error(ErrorKind::DomainViolation, "eval_T requires alpha > 0");
  if (!(X > 0.0 && lambda_cut >= 0.0 && lambda_cut < 1.0)) {
    throw Error(ErrorKind::DomainViolation, "eval_T requires X > 0 and 0 <= lambda_cut < 1");
  }
  MonomialTable t;
  t.lo = static_cast<std::uint64_t>(std::floor(lambda_cut * X));
  t.hi = static_cast<std::uint64_t>(std::floor(X));
  t.alpha = alpha;
  if (t.hi > t.lo) t.powers.reserve(t.hi - t.lo);
  for (std::uint64_t n = t.lo + 1; n <= t.hi; ++n) t.powers.push_back(pow_split(static_cast<double>(n), alpha));
  return t;
}

ComplexValue eval_T(const MonomialTable& table, double x) {
  return pairwise_sum_n<ComplexValue>(0, table.powers.size(),
                                      [&](std::size_t i) { return unit_phasor(reduce_phase(x, table.powers[i])); });
}

ComplexValue eval_T(double X, double lambda_cut, double alpha, double x) {
  return eval_T(monomial_table(X, lambda_cut, alpha), x);
}

namespace {

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return v;
}

}  // namespace

std::vector<double> GridSpec::x_points() const { return linspace(x_min, x_max, nx); }
std::vector<double> GridSpec::y_points() const { return linspace(y_min, y_max, ny); }

ExpSumGrid grid_eval(const PrimeTable& table, double c, double d, const GridSpec& spec, unsigned threads) {
  require_exponents(table, c, d);
  if (spec.nx == 0 || spec.ny == 0 || spec.nx > kMaxGridPoints / spec.ny) {
    throw Error(ErrorKind::GridTooLarge, "grid must have between 1 and 1e8 points");
  }
  if (!std::isfinite(spec.x_min) || !std::isfinite(spec.x_max) || !std::isfinite(spec.y_min) ||
      !std::isfinite(spec.y_max)) {
    throw Error(ErrorKind::DomainViolation, "grid bounds must be finite");
  }
  ExpSumGrid g;
  g.x_points = spec.x_points();
  g.y_points = spec.y_points();
  g.values.resize(spec.nx * spec.ny);
  g.params_digest = table_digest(table);
  parallel_chunks(spec.nx, threads, [&](std::size_t b, std::size_t e, std::size_t) {
    for (std::size_t i = b; i < e; ++i) {
      for (std::size_t j = 0; j < spec.ny; ++j) {
        g.values[i * spec.ny + j] = eval_S(table, c, d, g.x_points[i], g.y_points[j]);
      }
    }
  });
  return g;
}

void write_grid(const ExpSumGrid& grid, const std::filesystem::path& csv_path) {
  std::ofstream os(csv_path);
  if (!os) throw Error(ErrorKind::Io, "cannot open " + csv_path.string());
  os.precision(17);
  os << "x,y,re,im\n";
  for (std::size_t i = 0; i < grid.x_points.size(); ++i) {
    for (std::size_t j = 0; j < grid.y_points.size(); ++j) {
      const ComplexValue& v = grid.at(i, j);
      os << grid.x_points[i] << ',' << grid.y_points[j] << ',' << v.real() << ',' << v.imag() << '\n';
    }
  }
  std::ofstream side(csv_path.string() + ".json");
  if (!side) throw Error(ErrorKind::Io, "cannot open sidecar for " + csv_path.string());
  nlohmann::json j{{"params_digest", grid.params_digest},
                   {"nx", grid.x_points.size()},
                   {"ny", grid.y_points.size()}};
  side << j.dump(2) << '\n';
}

double max_mean_square_step(const PrimeTable& table, double c) {
  double spread = std::pow(table.X, c) - std::pow(table.lambda_cut * table.X, c);
  return 1.0 / (20.0 * spread);
}

double mean_square_x(const PrimeTable& table, double c, double d, double y, double half_width, double step,
                     unsigned threads) {
  require_exponents(table, c, d);
  if (!(step > 0.0) || step > max_mean_square_step(table, c)) {
    throw Error(ErrorKind::StepTooCoarse, "step must satisfy step <= 1/(20 (X^c - (lambda X)^c))");
  }
  return integrate_line(table, y, half_width, step, threads, [](double) { return 1.0; });
}

double mean_square_x_exact(const PrimeTable& table, double c, double d, double y, double half_width) {
  require_exponents(table, c, d);
  if (half_width <= 0.0) return 0.0;
  return pair_expansion(table, y, [&](double delta) {
    if (delta == 0.0) return 2.0 * half_width;
    return std::sin(2.0 * std::numbers::pi * delta * half_width) / (std::numbers::pi * delta);
  });
}

double mean_square_weighted(const PrimeTable& table, double c, double d, double y, double eps, double half_width,
                            double step, unsigned threads) {
  require_exponents(table, c, d);
  if (!(eps > 0.0)) throw Error(ErrorKind::NonPositiveDelta, "eps must be positive");
  if (!(step > 0.0) || step > max_mean_square_step(table, c)) {
    throw Error(ErrorKind::StepTooCoarse, "step must satisfy step <= 1/(20 (X^c - (lambda X)^c))");
  }
  return integrate_line(table, y, half_width, step, threads, [eps](double x) { return phi_delta(eps, x); });
}

double mean_square_weighted_exact(const PrimeTable& table, double c, double d, double y, double eps) {
  require_exponents(table, c, d);
  if (!(eps > 0.0)) throw Error(ErrorKind::NonPositiveDelta, "eps must be positive");
  return pair_expansion(table, y, [eps](double delta) { return phi(delta / eps); });
}

}  // namespace fiveprime
