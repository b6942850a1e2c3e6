#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "fiveprime/expsum.hpp"
#include "fiveprime/exppair.hpp"

namespace fiveprime {

namespace {

std::mt19937_64 trial_rng(std::uint64_t seed, std::size_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  return std::mt19937_64(seq);
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::exp(uniform(rng, std::log(lo), std::log(hi)));
}

struct Trial {
  double ratio = 0.0;
  std::string label;
};

BoundReport merge(const std::vector<Trial>& trials) {
  BoundReport r;
  r.samples = trials.size();
  for (const Trial& t : trials) {
    if (r.arg_max.empty() || t.ratio > r.max_ratio || !std::isfinite(t.ratio)) {
      r.max_ratio = t.ratio;
      r.arg_max = t.label;
      if (!std::isfinite(t.ratio)) break;
    }
  }
  return r;
}

template <class Fn>
BoundReport run_trials(std::size_t trials, unsigned threads, const Fn& fn) {
  std::vector<Trial> out(trials);
  parallel_chunks(trials, threads, [&](std::size_t b, std::size_t e, std::size_t) {
    for (std::size_t i = b; i < e; ++i) out[i] = fn(i);
  });
  return merge(out);
}

std::string describe(std::initializer_list<std::pair<const char*, double>> fields) {
  std::ostringstream os;
  os.precision(10);
  bool first = true;
  for (const auto& [k, v] : fields) {
    if (!first) os << ',';
    os << k << '=' << v;
    first = false;
  }
  return os.str();
}

// Integer range (A, B] for real endpoints.
std::pair<std::uint64_t, std::uint64_t> int_range(double A, double B) {
  return {static_cast<std::uint64_t>(std::floor(A)) + 1, static_cast<std::uint64_t>(std::floor(B))};
}

}  // namespace

BoundReport check_vdc_first(std::uint64_t seed, std::size_t trials, unsigned threads) {
  return run_trials(trials, threads, [seed](std::size_t i) {
    auto rng = trial_rng(seed, i);
    double lambda1 = log_uniform(rng, 1e-3, 0.5);
    double theta = uniform(rng, 0.5 * lambda1, lambda1);
    double A = uniform(rng, 5.5, 5000.0);
    auto [n0, n1] = int_range(A, 2.0 * A);
    CompensatedSum re, im;
    for (std::uint64_t n = n0; n <= n1; ++n) {
      ComplexValue z = unit_phasor(wrap_unit(theta * static_cast<double>(n)));
      re.add(z.real());
      im.add(z.imag());
    }
    double sum = std::hypot(re.value(), im.value());
    double bound = vdc_bounds(A, lambda1, 1.0).first;
    return Trial{sum / bound, describe({{"lambda1", lambda1}, {"theta", theta}, {"A", A}})};
  });
}

BoundReport check_vdc_second(std::uint64_t seed, std::size_t trials, unsigned threads) {
  constexpr double alpha = 1.03;
  return run_trials(trials, threads, [seed](std::size_t i) {
    auto rng = trial_rng(seed, i);
    double lambda2 = log_uniform(rng, 1e-6, 1e-1);
    double A = log_uniform(rng, 10.0, 5000.0);
    // f(n) = x n^alpha has f'' = x alpha (alpha - 1) n^{alpha - 2}, which is
    // lambda2 at n = A and lambda2 2^{alpha - 2} at n = 2A.
    double x = lambda2 / (alpha * (alpha - 1.0) * std::pow(A, alpha - 2.0));
    auto [n0, n1] = int_range(A, 2.0 * A);
    CompensatedSum re, im;
    for (std::uint64_t n = n0; n <= n1; ++n) {
      ComplexValue z = unit_phasor(reduce_phase(x, pow_split(static_cast<double>(n), alpha)));
      re.add(z.real());
      im.add(z.imag());
    }
    double sum = std::hypot(re.value(), im.value());
    double bound = vdc_bounds(A, 0.5, lambda2).second;
    return Trial{sum / bound, describe({{"lambda2", lambda2}, {"A", A}, {"x", x}})};
  });
}

BoundReport check_zhai_first(std::uint64_t seed, std::size_t trials, unsigned threads) {
  return run_trials(trials, threads, [seed](std::size_t i) {
    auto rng = trial_rng(seed, i);
    double M = log_uniform(rng, 5.0, 2000.0);
    double R = M * log_uniform(rng, 1e-3, 0.125);
    double g1 = uniform(rng, 1.01, 1.99);
    double g2 = g1;
    while (std::fabs(g2 - g1) < 1e-3) g2 = uniform(rng, 1.01, 1.99);
    double share = uniform(rng, 0.1, 0.9);
    double sa = uniform(rng, 0.0, 1.0) < 0.5 ? -1.0 : 1.0;
    double sb = uniform(rng, 0.0, 1.0) < 0.5 ? -1.0 : 1.0;
    double a = sa * share * R / std::pow(M, g1);
    double b = sb * (1.0 - share) * R / std::pow(M, g2);
    ZhaiBounds zb = zhai_bounds(M, a, b, g1, g2);
    auto [m0, m1] = int_range(M, 2.0 * M);
    CompensatedSum re, im;
    for (std::uint64_t m = m0; m <= m1; ++m) {
      auto md = static_cast<double>(m);
      double t = wrap_unit(a * std::pow(md, g1)) + wrap_unit(b * std::pow(md, g2));
      ComplexValue z = unit_phasor(t);
      re.add(z.real());
      im.add(z.imag());
    }
    double sum = std::hypot(re.value(), im.value());
    double bound = zb.bound1.value_or(std::nan(""));
    return Trial{sum / bound, describe({{"M", M}, {"a", a}, {"b", b}, {"g1", g1}, {"g2", g2}, {"R", zb.R}})};
  });
}

BoundReport check_kratzel(std::uint64_t seed, std::size_t trials, unsigned threads) {
  return run_trials(trials, threads, [seed](std::size_t i) {
    auto rng = trial_rng(seed, i);
    double N = log_uniform(rng, 5.0, 5000.0);
    double theta = log_uniform(rng, 1e-4, 0.5);
    double D = log_uniform(rng, 1.0, 1000.0);
    auto [n0, n1] = int_range(N, 2.0 * N);
    CompensatedSum acc;
    for (std::uint64_t n = n0; n <= n1; ++n) {
      double dist = std::fabs(wrap_unit(theta * static_cast<double>(n)));
      acc.add(dist == 0.0 ? D : std::min(D, 1.0 / dist));
    }
    double P = 2.0 * N * theta;
    double bound = kratzel_bound(P, D, theta);
    return Trial{acc.value() / bound, describe({{"N", N}, {"theta", theta}, {"D", D}})};
  });
}

BoundReport check_td(double X, double d, double lambda_cut, const ExponentPair& p, std::size_t points,
                     unsigned threads) {
  MonomialTable table = monomial_table(X, lambda_cut, d);
  return run_trials(points, threads, [&](std::size_t k) {
    double t = points == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(points - 1);
    double h = std::pow(10.0, -4.0 + 4.0 * t);
    double sum = std::abs(eval_T(table, h));
    return Trial{sum / td_bound(h, X, d, p), describe({{"h", h}})};
  });
}

WeylSweep check_weyl(std::uint64_t seed, std::size_t trials, double tol, unsigned threads) {
  std::vector<double> excess(trials);
  parallel_chunks(trials, threads, [&](std::size_t b, std::size_t e, std::size_t) {
    for (std::size_t i = b; i < e; ++i) {
      auto rng = trial_rng(seed, i);
      auto len = std::uniform_int_distribution<std::size_t>(1, 200)(rng);
      double Q = uniform(rng, 0.05, 1.5 * static_cast<double>(len));
      std::vector<ComplexValue> z(len);
      int family = std::uniform_int_distribution<int>(0, 3)(rng);
      std::normal_distribution<double> gauss;
      double a = uniform(rng, 0.0, 1.0);
      for (std::size_t k = 0; k < len; ++k) {
        auto kd = static_cast<double>(k);
        switch (family) {
          case 0: z[k] = {gauss(rng), gauss(rng)}; break;
          case 1: z[k] = unit_phasor(wrap_unit(a * kd * kd)); break;
          case 2: z[k] = unit_phasor(wrap_unit(a * kd)); break;
          default: z[k] = {1.0, 0.0}; break;
        }
      }
      WeylCheck w = weyl_vdc_check(z, Q);
      excess[i] = w.lhs - w.rhs;
    }
  });
  WeylSweep s;
  s.trials = trials;
  s.max_excess = trials ? excess[0] : 0.0;
  for (double e : excess) {
    if (e > tol) ++s.violations;
    s.max_excess = std::max(s.max_excess, e);
  }
  return s;
}

}  // namespace fiveprime
