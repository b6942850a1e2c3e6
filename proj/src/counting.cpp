#include "fiveprime/counting.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>

#include "fiveprime/error.hpp"
#include "fiveprime/expsum.hpp"

namespace fiveprime {

namespace {

using Quad = __float128;

struct Window {
  CountMode mode = CountMode::Indicator;
  double accept1 = 0.0;  // acceptance half-widths
  double accept2 = 0.0;
  bool closed = false;   // <= instead of <
  double search1 = 0.0;  // candidate half-widths, accept + slack
  double search2 = 0.0;
  double eps1 = 0.0;
  double eps2 = 0.0;
};

Window make_window(const PrimeTable& table, const SystemParams& params, double eps1, double eps2, CountMode mode) {
  if (table.c != params.c || table.d != params.d) {
    throw Error(ErrorKind::InvalidParams, "prime table was built for different exponents");
  }
  if (!std::isfinite(params.N1) || !std::isfinite(params.N2)) {
    throw Error(ErrorKind::InvalidParams, "N1 and N2 must be finite");
  }
  if (!(eps1 >= 0.0 && eps2 >= 0.0) || !std::isfinite(eps1) || !std::isfinite(eps2)) {
    throw Error(ErrorKind::InvalidParams, "windows must be finite and non-negative");
  }
  Window w;
  w.mode = mode;
  w.eps1 = eps1;
  w.eps2 = eps2;
  switch (mode) {
    case CountMode::Indicator:
      w.accept1 = eps1;
      w.accept2 = eps2;
      break;
    case CountMode::IndicatorLogWindow: {
      if (!(params.N1 > 1.0)) throw Error(ErrorKind::InvalidParams, "log window requires N1 > 1");
      double logX = std::log(params.N1) / params.c;
      w.accept1 = eps1 * logX;
      w.accept2 = eps2 * logX;
      w.closed = true;
      break;
    }
    case CountMode::Smoothed:
      if (!(eps1 > 0.0 && eps2 > 0.0)) throw Error(ErrorKind::InvalidParams, "smoothed count requires eps > 0");
      w.accept1 = 8.0 * eps1;
      w.accept2 = 8.0 * eps2;
      break;
  }
  // Candidate search runs on double sums of the leading parts; the slack
  // covers their rounding so no true solution is pruned.
  w.search1 = w.accept1 + 1e-12 * (std::fabs(params.N1) + 1.0);
  w.search2 = w.accept2 + 1e-12 * (std::fabs(params.N2) + 1.0);
  return w;
}

struct Accumulator {
  std::uint64_t raw = 0;
  FixedPointSum fixed;
  CompensatedSum smooth;
  std::vector<SolutionRecord> records;
};

// Final decision for one multiset. Residuals are formed in binary128 from the
// split powers, summed in ascending index order, so every enumeration order
// reaches the same verdict and the same weight.
class Judge {
 public:
  Judge(const PrimeTable& table, const SystemParams& params, const Window& window, bool collect)
      : table_(table), window_(window), collect_(collect), n1_(params.N1), n2_(params.N2) {}

  void consider(std::array<std::uint32_t, 5> idx, std::uint64_t multiplicity, bool emit, Accumulator& acc) const {
    std::sort(idx.begin(), idx.end());
    Quad s1 = 0, s2 = 0;
    double weight = 1.0;
    for (std::uint32_t i : idx) {
      s1 += static_cast<Quad>(table_.pc[i].hi) + static_cast<Quad>(table_.pc[i].lo);
      s2 += static_cast<Quad>(table_.pd[i].hi) + static_cast<Quad>(table_.pd[i].lo);
      weight *= table_.logp[i];
    }
    Quad r1 = s1 - static_cast<Quad>(n1_);
    Quad r2 = s2 - static_cast<Quad>(n2_);
    Quad a1 = r1 < 0 ? -r1 : r1;
    Quad a2 = r2 < 0 ? -r2 : r2;
    Quad w1 = window_.accept1;
    Quad w2 = window_.accept2;
    bool inside = window_.closed ? (a1 <= w1 && a2 <= w2) : (a1 < w1 && a2 < w2);
    if (!inside) return;
    auto r1d = static_cast<double>(r1);
    auto r2d = static_cast<double>(r2);
    if (window_.mode == CountMode::Smoothed) {
      acc.smooth.add(static_cast<double>(multiplicity) * weight * phi(r1d / window_.eps1) * phi(r2d / window_.eps2));
    } else {
      acc.raw += multiplicity;
      acc.fixed.add_repeated(weight, multiplicity);
    }
    if (emit && collect_) {
      SolutionRecord rec;
      for (std::size_t k = 0; k < 5; ++k) rec.p[k] = table_.primes[idx[k]];
      rec.r1 = r1d;
      rec.r2 = r2d;
      rec.weight = weight;
      acc.records.push_back(rec);
    }
  }

 private:
  const PrimeTable& table_;
  Window window_;
  bool collect_;
  double n1_;
  double n2_;
};

std::vector<double> leading(const std::vector<DoubleDouble>& v) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].hi;
  return out;
}

// Indices i with lo <= v[i] <= hi in an ascending vector.
std::pair<std::size_t, std::size_t> index_range(const std::vector<double>& v, double lo, double hi) {
  auto b = std::lower_bound(v.begin(), v.end(), lo);
  auto e = std::upper_bound(b, v.end(), hi);
  return {static_cast<std::size_t>(b - v.begin()), static_cast<std::size_t>(e - v.begin())};
}

CountResult finish(CountMode mode, std::vector<Accumulator>& accs, const PrimeTable& table, const SystemParams& params,
                   double eps1, double eps2, std::chrono::steady_clock::time_point start) {
  CountResult r;
  r.mode = mode;
  if (mode == CountMode::Smoothed) {
    std::vector<double> partial(accs.size());
    for (std::size_t i = 0; i < accs.size(); ++i) partial[i] = accs[i].smooth.value();
    r.weighted_count = pairwise_sum(partial);
    double total_weight = chebyshev_weight(table);
    r.truncation_bound = std::pow(total_weight, 5) * std::exp(-64.0 * std::numbers::pi);
  } else {
    std::uint64_t raw = 0;
    FixedPointSum fixed;
    for (const Accumulator& a : accs) {
      raw += a.raw;
      fixed.merge(a.fixed);
    }
    r.raw_count = raw;
    r.weighted_count = fixed.value();
  }
  for (Accumulator& a : accs) r.records.insert(r.records.end(), a.records.begin(), a.records.end());
  std::sort(r.records.begin(), r.records.end(),
            [](const SolutionRecord& x, const SolutionRecord& y) { return x.p < y.p; });
  double X = params.N1 > 0.0 ? std::pow(params.N1, 1.0 / params.c) : 0.0;
  r.main_term_scale = main_term_scale(eps1, eps2, X, params.c, params.d);
  r.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::uint64_t arrangements3(std::uint32_t a, std::uint32_t b, std::uint32_t c) {
  if (a == b && b == c) return 1;
  if (a == b || b == c) return 3;
  return 6;
}

}  // namespace

std::string_view to_string(CountMode mode) noexcept {
  switch (mode) {
    case CountMode::Indicator: return "indicator";
    case CountMode::IndicatorLogWindow: return "indicator_logwindow";
    case CountMode::Smoothed: return "smoothed";
  }
  return "?";
}

CountMode parse_count_mode(std::string_view text) {
  if (text == "indicator") return CountMode::Indicator;
  if (text == "indicator_logwindow") return CountMode::IndicatorLogWindow;
  if (text == "smoothed") return CountMode::Smoothed;
  throw Error(ErrorKind::Usage, "unknown count mode '" + std::string(text) + "'");
}

CountResult exhaustive_count(const PrimeTable& table, const SystemParams& params, double eps1, double eps2,
                             CountMode mode, const CountOptions& options) {
  auto start = std::chrono::steady_clock::now();
  Window w = make_window(table, params, eps1, eps2, mode);
  auto P = table.size();
  if (std::pow(static_cast<double>(P), 5) > kMaxExhaustiveTuples) {
    throw Error(ErrorKind::InstanceTooLarge, "exhaustive count requires (#primes)^5 <= 1e10");
  }
  std::vector<Accumulator> accs(P);
  if (P > 0) {
    std::vector<double> pc = leading(table.pc);
    std::vector<double> pd = leading(table.pd);
    double cmin = pc.front(), cmax = pc.back(), dmin = pd.front(), dmax = pd.back();
    Judge judge(table, params, w, options.collect_records);

    auto descend = [&](auto&& self, int level, double s1, double s2, std::array<std::uint32_t, 5>& idx,
                       Accumulator& acc, std::size_t only) -> void {
      int after = 4 - level;  // slots still free after this one
      double lo = params.N1 - w.search1 - s1 - after * cmax;
      double hi = params.N1 + w.search1 - s1 - after * cmin;
      auto [b, e] = index_range(pc, lo, hi);
      if (level == 0) {
        if (only < b || only >= e) return;
        b = only;
        e = only + 1;
      }
      for (std::size_t i = b; i < e; ++i) {
        double t2 = s2 + pd[i];
        if (t2 + after * dmin > params.N2 + w.search2 || t2 + after * dmax < params.N2 - w.search2) continue;
        idx[level] = static_cast<std::uint32_t>(i);
        if (level == 4) {
          bool sorted = std::is_sorted(idx.begin(), idx.end());
          judge.consider(idx, 1, sorted, acc);
        } else {
          self(self, level + 1, s1 + pc[i], t2, idx, acc, only);
        }
      }
    };

    parallel_chunks(P, options.threads, [&](std::size_t b, std::size_t e, std::size_t) {
      for (std::size_t i0 = b; i0 < e; ++i0) {
        std::array<std::uint32_t, 5> idx{};
        descend(descend, 0, 0.0, 0.0, idx, accs[i0], i0);
      }
    });
  }
  return finish(mode, accs, table, params, eps1, eps2, start);
}

CountResult mitm_count(const PrimeTable& table, const SystemParams& params, double eps1, double eps2, CountMode mode,
                       const CountOptions& options) {
  auto start = std::chrono::steady_clock::now();
  Window w = make_window(table, params, eps1, eps2, mode);
  std::size_t P = table.size();
  if (P > kMaxMitmPrimes) throw Error(ErrorKind::MemoryLimit, "meet-in-the-middle count requires #primes <= 5000");
  std::vector<Accumulator> accs(P);
  if (P > 0) {
    std::vector<double> pc = leading(table.pc);
    std::vector<double> pd = leading(table.pd);
    double cmin = pc.front(), cmax = pc.back();

    // Unordered pairs i <= j sorted by their c-sum; key = i * P + j.
    std::size_t pair_count = P * (P + 1) / 2;
    std::vector<std::pair<double, std::uint32_t>> pairs;
    pairs.reserve(pair_count);
    for (std::size_t i = 0; i < P; ++i) {
      for (std::size_t j = i; j < P; ++j) pairs.emplace_back(pc[i] + pc[j], static_cast<std::uint32_t>(i * P + j));
    }
    std::sort(pairs.begin(), pairs.end());
    std::vector<double> pair_c(pair_count);
    std::vector<std::uint32_t> pair_key(pair_count);
    for (std::size_t k = 0; k < pair_count; ++k) {
      pair_c[k] = pairs[k].first;
      pair_key[k] = pairs[k].second;
    }
    pairs.clear();
    pairs.shrink_to_fit();

    Judge judge(table, params, w, options.collect_records);
    parallel_chunks(P, options.threads, [&](std::size_t b0, std::size_t e0, std::size_t) {
      for (std::size_t a = b0; a < e0; ++a) {
        Accumulator& acc = accs[a];
        for (std::size_t b = a; b < P; ++b) {
          double ab = pc[a] + pc[b];
          // The third triple entry must leave the pair sum inside [2 cmin, 2 cmax].
          auto [c0, c1] = index_range(pc, params.N1 - w.search1 - ab - 2.0 * cmax,
                                      params.N1 + w.search1 - ab - 2.0 * cmin);
          for (std::size_t c = std::max(c0, b); c < c1; ++c) {
            double t1 = ab + pc[c];
            double t2 = pd[a] + pd[b] + pd[c];
            auto [k0, k1] = index_range(pair_c, params.N1 - w.search1 - t1, params.N1 + w.search1 - t1);
            std::uint64_t m3 = arrangements3(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b),
                                             static_cast<std::uint32_t>(c));
            for (std::size_t k = k0; k < k1; ++k) {
              std::uint32_t i = pair_key[k] / static_cast<std::uint32_t>(P);
              std::uint32_t j = pair_key[k] % static_cast<std::uint32_t>(P);
              double s2 = t2 + pd[i] + pd[j];
              if (std::fabs(s2 - params.N2) > w.search2) continue;
              std::uint64_t m2 = i == j ? 1 : 2;
              std::array<std::uint32_t, 5> idx{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b),
                                               static_cast<std::uint32_t>(c), i, j};
              judge.consider(idx, m3 * m2, c <= i, acc);
            }
          }
        }
      }
    });
  }
  return finish(mode, accs, table, params, eps1, eps2, start);
}

CountResult smoothed_count(const PrimeTable& table, const SystemParams& params, double eps1, double eps2,
                           const CountOptions& options) {
  return mitm_count(table, params, eps1, eps2, CountMode::Smoothed, options);
}

double main_term_scale(double eps1, double eps2, double X, double c, double d) {
  return eps1 * eps2 * std::pow(X, 5.0 - c - d);
}

double main_term_scale(const SystemParams& params, const DerivedScales& scales) {
  return main_term_scale(scales.eps1, scales.eps2, scales.X, params.c, params.d);
}

void write_records(const std::vector<SolutionRecord>& records, const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw Error(ErrorKind::Io, "cannot open " + path.string());
  os.precision(17);
  os << "p1,p2,p3,p4,p5,r1,r2,weight\n";
  for (const SolutionRecord& r : records) {
    for (std::uint64_t p : r.p) os << p << ',';
    os << r.r1 << ',' << r.r2 << ',' << r.weight << '\n';
  }
}

}  // namespace fiveprime
