#include "fiveprime/decomp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fiveprime/error.hpp"

namespace fiveprime {

namespace {

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> small, large;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    small.push_back(d);
    if (d * d != n) large.push_back(n / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

// Dirichlet convolution restricted to the divisor lattice of n: both inputs
// and the output are indexed like `divs`.
template <class T, class U>
std::vector<double> convolve(const std::vector<std::uint64_t>& divs, const std::vector<T>& f,
                             const std::vector<U>& g) {
  std::vector<double> out(divs.size(), 0.0);
  for (std::size_t i = 0; i < divs.size(); ++i) {
    for (std::size_t e = 0; e <= i; ++e) {
      if (divs[i] % divs[e] != 0) continue;
      auto it = std::lower_bound(divs.begin(), divs.end(), divs[i] / divs[e]);
      out[i] += static_cast<double>(f[e]) * static_cast<double>(g[static_cast<std::size_t>(it - divs.begin())]);
    }
  }
  return out;
}

std::uint64_t binomial(int n, int r) {
  std::uint64_t b = 1;
  for (int i = 1; i <= r; ++i) b = b * static_cast<std::uint64_t>(n - r + i) / static_cast<std::uint64_t>(i);
  return b;
}

}  // namespace

HBDecomposition hb_decomposition(int k, double z) {
  if (k < 1) throw Error(ErrorKind::InvalidParams, "Heath-Brown identity requires k >= 1");
  if (!(z >= 1.0)) throw Error(ErrorKind::InvalidParams, "Heath-Brown identity requires z >= 1");
  HBDecomposition hb;
  hb.k = k;
  hb.z = z;
  for (int j = 1; j <= k; ++j) hb.terms.push_back({j, (j % 2 == 1) ? 1 : -1, binomial(k, j)});
  return hb;
}

double hb_evaluate(const HBDecomposition& hb, std::uint64_t n, const ArithmeticTables& tables) {
  if (n < 1 || static_cast<double>(n) > 2.0 * std::pow(hb.z, hb.k)) {
    throw Error(ErrorKind::OutOfRange, "hb_evaluate requires 1 <= n <= 2 z^k");
  }
  if (n > tables.n_max) throw Error(ErrorKind::OutOfRange, "arithmetic tables do not cover n");
  auto divs = divisors(n);
  std::vector<double> logs(divs.size());
  std::vector<int> ones(divs.size(), 1);
  std::vector<int> mu_z(divs.size());
  for (std::size_t i = 0; i < divs.size(); ++i) {
    logs[i] = std::log(static_cast<double>(divs[i]));
    mu_z[i] = static_cast<double>(divs[i]) <= hb.z ? tables.mu(divs[i]) : 0;
  }
  // smooth_j = log * 1^{*(j-1)}, moebius_j = (mu 1_{<=z})^{*j}.
  std::vector<double> smooth = logs;
  std::vector<double> moebius(mu_z.begin(), mu_z.end());
  CompensatedSum total;
  for (const HBTerm& t : hb.terms) {
    if (t.j > 1) {
      smooth = convolve(divs, smooth, ones);
      moebius = convolve(divs, moebius, mu_z);
    }
    double g = convolve(divs, smooth, moebius).back();
    total.add(static_cast<double>(t.sign) * static_cast<double>(t.binom) * g);
  }
  return total.value();
}

double hb_evaluate(int k, double z, std::uint64_t n, const ArithmeticTables& tables) {
  return hb_evaluate(hb_decomposition(k, z), n, tables);
}

std::uint64_t hb_cutoff(int k, std::uint64_t n_max) {
  auto z = static_cast<std::uint64_t>(std::ceil(std::pow(static_cast<double>(n_max) / 2.0, 1.0 / k)));
  z = std::max<std::uint64_t>(z, 1);
  auto covers = [&](std::uint64_t v) { return 2.0 * std::pow(static_cast<double>(v), k) >= static_cast<double>(n_max); };
  while (z > 1 && covers(z - 1)) --z;
  while (!covers(z)) ++z;
  return z;
}

double hb_verify_range(int k, std::uint64_t n_max, unsigned threads) {
  if (k < 1 || k > 3) throw Error(ErrorKind::InvalidParams, "hb_verify_range supports k in {1, 2, 3}");
  if (n_max > kMaxHBVerify) throw Error(ErrorKind::LimitExceeded, "hb_verify_range requires n_max <= 1e4");
  if (n_max == 0) return 0.0;
  ArithmeticTables tables = arithmetic_tables(n_max);
  HBDecomposition hb = hb_decomposition(k, static_cast<double>(hb_cutoff(k, n_max)));
  std::vector<double> worst(chunk_count(n_max, threads), 0.0);
  parallel_chunks(n_max, threads, [&](std::size_t b, std::size_t e, std::size_t chunk) {
    for (std::size_t i = b; i < e; ++i) {
      std::uint64_t n = i + 1;
      double err = std::fabs(hb_evaluate(hb, n, tables) - tables.lambda(n));
      worst[chunk] = std::max(worst[chunk], err);
    }
  });
  return *std::max_element(worst.begin(), worst.end());
}

DecompThresholds thresholds(double X, double R) {
  if (!(X > 1.0 && R > 0.0)) throw Error(ErrorKind::DomainViolation, "thresholds require X > 1 and R > 0");
  DecompThresholds th;
  th.X = X;
  th.R = R;
  th.frakA = std::min(std::pow(X, 59.0 / 37.0) / R, std::pow(X, 25.0 / 37.0));
  th.frakB = std::pow(X, 6.0 / 37.0);
  th.frakC = std::min(std::pow(X, 56.0 / 37.0) / R, R * std::pow(X, -12.0 / 37.0));
  return th;
}

double frequency_size(double x, double y, double X, double c, double d) {
  return std::fabs(x) * std::pow(X, c) + std::fabs(y) * std::pow(X, d);
}

ThresholdCheck check_thresholds(const DecompThresholds& th, double rel_slack) {
  double limit = th.frakC * (1.0 + rel_slack);
  return {th.frakB * th.frakB <= limit, th.X / th.frakA <= limit};
}

std::string_view to_string(SumKind kind) noexcept { return kind == SumKind::TypeI ? "TypeI" : "TypeII"; }

CaseLabel classify_blocks(std::span<const double> blocks, const DecompThresholds& th) {
  auto infeasible = [](const std::string& why) { throw Error(ErrorKind::InfeasibleProfile, why); };
  if (blocks.size() != kBlockCount) infeasible("block profile must have 20 entries");
  double log_product = 0.0;
  for (double b : blocks) {
    if (!(b >= 1.0) || !std::isfinite(b)) infeasible("block sizes must be finite and >= 1");
    log_product += std::log(b);
  }
  if (std::fabs(log_product - std::log(th.X)) > 20.0 * std::log(2.0)) {
    infeasible("product of blocks is not within a factor 2^20 of X");
  }
  double mu_cap = std::pow(2.0 * th.X, 0.1);
  for (std::size_t i = 10; i < kBlockCount; ++i) {
    if (blocks[i] > mu_cap) infeasible("blocks 11-20 must not exceed (2X)^{1/10}");
  }

  double type_one_floor = th.X / th.frakA;
  auto label = [&](SumKind kind, int number, std::vector<std::size_t> n_idx) {
    CaseLabel c;
    c.kind = kind;
    c.case_number = number;
    std::vector<bool> in_n(kBlockCount, false);
    for (std::size_t i : n_idx) in_n[i] = true;
    for (std::size_t i = 0; i < kBlockCount; ++i) {
      if (in_n[i]) {
        c.N *= blocks[i];
      } else {
        c.m_blocks.push_back(i);
        c.M *= blocks[i];
      }
    }
    std::sort(n_idx.begin(), n_idx.end());
    c.n_blocks = std::move(n_idx);
    return c;
  };

  for (std::size_t j = 0; j < 10; ++j) {
    if (blocks[j] >= type_one_floor) return label(SumKind::TypeI, 1, {j});
  }
  for (std::size_t j = 0; j < kBlockCount; ++j) {
    if (blocks[j] >= th.frakB && blocks[j] < type_one_floor) return label(SumKind::TypeII, 2, {j});
  }
  for (double b : blocks) {
    if (b >= th.frakB) infeasible("a Moebius block reaches X/frakA; no case applies");
  }
  std::vector<std::size_t> order(kBlockCount);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return blocks[a] > blocks[b]; });
  double prefix = 1.0;
  std::vector<std::size_t> chosen;
  for (std::size_t i : order) {
    prefix *= blocks[i];
    chosen.push_back(i);
    if (prefix >= th.frakB) return label(SumKind::TypeII, 3, chosen);
  }
  infeasible("blocks never reach frakB");
  return {};
}

ComplexValue type_sum(SumKind kind, std::span<const double> a, std::span<const double> b, double M, double N,
                      double c, double d, double x, double y) {
  if (!(M >= 1.0 && N >= 1.0)) throw Error(ErrorKind::DomainViolation, "type_sum requires M, N >= 1");
  if (M * N > kMaxTypeSumTerms) throw Error(ErrorKind::SizeLimit, "type_sum requires M N <= 1e7");
  auto m0 = static_cast<std::uint64_t>(std::floor(M)) + 1;
  auto m1 = static_cast<std::uint64_t>(std::floor(2.0 * M));
  auto n0 = static_cast<std::uint64_t>(std::floor(N)) + 1;
  auto n1 = static_cast<std::uint64_t>(std::floor(2.0 * N));
  std::size_t mc = m1 >= m0 ? m1 - m0 + 1 : 0;
  std::size_t nc = n1 >= n0 ? n1 - n0 + 1 : 0;
  if (a.size() != mc) throw Error(ErrorKind::DomainViolation, "a must have one entry per m in (M, 2M]");
  if (kind == SumKind::TypeI && !b.empty()) throw Error(ErrorKind::DomainViolation, "Type I sums take no b");
  if (kind == SumKind::TypeII && b.size() != nc) {
    throw Error(ErrorKind::DomainViolation, "b must have one entry per n in (N, 2N]");
  }
  std::vector<DoubleDouble> mcp(mc), mdp(mc), ncp(nc), ndp(nc);
  for (std::size_t i = 0; i < mc; ++i) {
    mcp[i] = pow_split(static_cast<double>(m0 + i), c);
    mdp[i] = pow_split(static_cast<double>(m0 + i), d);
  }
  for (std::size_t i = 0; i < nc; ++i) {
    ncp[i] = pow_split(static_cast<double>(n0 + i), c);
    ndp[i] = pow_split(static_cast<double>(n0 + i), d);
  }
  return pairwise_sum_n<ComplexValue>(0, mc, [&](std::size_t i) {
    ComplexValue inner = pairwise_sum_n<ComplexValue>(0, nc, [&](std::size_t j) {
      double t = reduce_phase(x, dd_mul(mcp[i], ncp[j])) + reduce_phase(y, dd_mul(mdp[i], ndp[j]));
      double w = kind == SumKind::TypeII ? b[j] : 1.0;
      return w * unit_phasor(t);
    });
    return a[i] * inner;
  });
}

}  // namespace fiveprime
