#include "fiveprime/primes.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include "fiveprime/error.hpp"

namespace fiveprime {

namespace {

std::vector<std::uint32_t> base_primes(std::uint64_t limit) {
  std::vector<bool> composite(limit + 1, false);
  std::vector<std::uint32_t> out;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

void sieve_segment(std::uint64_t seg_lo, std::uint64_t seg_hi, const std::vector<std::uint32_t>& base,
                   std::vector<std::uint64_t>& out) {
  std::vector<unsigned char> mark(seg_hi - seg_lo + 1, 1);
  for (std::uint32_t p : base) {
    std::uint64_t pp = std::uint64_t{p} * p;
    if (pp > seg_hi) break;
    std::uint64_t start = std::max(pp, (seg_lo + p - 1) / p * p);
    for (std::uint64_t m = start; m <= seg_hi; m += p) mark[m - seg_lo] = 0;
  }
  for (std::uint64_t n = std::max<std::uint64_t>(seg_lo, 2); n <= seg_hi; ++n) {
    if (mark[n - seg_lo]) out.push_back(n);
  }
}

template <class T>
void put(std::ostream& os, T value) {
  auto bytes = std::bit_cast<std::array<unsigned char, sizeof(T)>>(value);
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  os.write(reinterpret_cast<const char*>(bytes.data()), bytes.size());
}

template <class T>
T get(std::istream& is) {
  std::array<unsigned char, sizeof(T)> bytes{};
  is.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
  if (!is) throw Error(ErrorKind::Io, "truncated prime cache");
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  return std::bit_cast<T>(bytes);
}

}  // namespace

std::uint64_t PrimeTable::lower() const {
  return static_cast<std::uint64_t>(std::floor(lambda_cut * X));
}

std::uint64_t PrimeTable::upper() const { return static_cast<std::uint64_t>(std::floor(X)); }

PrimeTable sieve(double X, double lambda_cut, double c, double d, unsigned threads) {
  if (!(X <= kMaxSieveX)) throw Error(ErrorKind::RangeTooLarge, "sieve requires X <= 1e9");
  if (!(lambda_cut > 0.0 && lambda_cut < 1.0)) {
    throw Error(ErrorKind::InvalidParams, "sieve requires 0 < lambda_cut < 1");
  }
  if (!(2.0 <= lambda_cut * X && lambda_cut * X < X)) {
    throw Error(ErrorKind::InvalidParams, "sieve requires 2 <= lambda_cut * X < X");
  }
  PrimeTable t;
  t.X = X;
  t.lambda_cut = lambda_cut;
  t.c = c;
  t.d = d;
  std::uint64_t lo = t.lower() + 1;
  std::uint64_t hi = t.upper();
  if (lo > hi) return t;

  auto base = base_primes(isqrt(hi));
  std::size_t segments = (hi - lo) / kSieveSegment + 1;
  std::vector<std::vector<std::uint64_t>> found(segments);
  parallel_chunks(segments, threads, [&](std::size_t b, std::size_t e, std::size_t) {
    for (std::size_t s = b; s < e; ++s) {
      std::uint64_t seg_lo = lo + s * kSieveSegment;
      std::uint64_t seg_hi = std::min<std::uint64_t>(hi, seg_lo + kSieveSegment - 1);
      sieve_segment(seg_lo, seg_hi, base, found[s]);
    }
  });
  for (auto& f : found) t.primes.insert(t.primes.end(), f.begin(), f.end());

  std::size_t n = t.primes.size();
  t.logp.resize(n);
  t.pc.resize(n);
  t.pd.resize(n);
  parallel_chunks(n, threads, [&](std::size_t b, std::size_t e, std::size_t) {
    for (std::size_t i = b; i < e; ++i) {
      auto p = static_cast<double>(t.primes[i]);
      t.logp[i] = std::log(p);
      t.pc[i] = pow_split(p, c);
      t.pd[i] = pow_split(p, d);
    }
  });
  return t;
}

double chebyshev_weight(const PrimeTable& table) { return pairwise_sum(table.logp); }

std::string table_digest(const PrimeTable& table) {
  std::ostringstream head;
  head.precision(17);
  head << "X=" << table.X << ";lambda=" << table.lambda_cut << ";c=" << table.c << ";d=" << table.d
       << ";n=" << table.size();
  std::uint64_t h = fnv1a(head.str());
  h = fnv1a(std::span<const unsigned char>(reinterpret_cast<const unsigned char*>(table.primes.data()),
                                           table.primes.size() * sizeof(std::uint64_t)),
            h);
  std::ostringstream out;
  out << std::hex;
  out.width(16);
  out.fill('0');
  out << h;
  return out.str();
}

ArithmeticTables arithmetic_tables(std::uint64_t n_max) {
  if (n_max > kMaxArithmeticN) throw Error(ErrorKind::LimitExceeded, "arithmetic_tables requires n_max <= 1e7");
  ArithmeticTables t;
  t.n_max = n_max;
  t.mangoldt.assign(n_max + 1, 0.0);
  t.moebius.assign(n_max + 1, 0);
  if (n_max == 0) return t;
  t.moebius[1] = 1;
  // Linear sieve: every composite is crossed exactly once by its least prime.
  std::vector<std::uint32_t> least(n_max + 1, 0);
  std::vector<std::uint32_t> primes;
  for (std::uint64_t i = 2; i <= n_max; ++i) {
    if (least[i] == 0) {
      least[i] = static_cast<std::uint32_t>(i);
      primes.push_back(static_cast<std::uint32_t>(i));
      t.moebius[i] = -1;
    }
    for (std::uint32_t p : primes) {
      std::uint64_t m = i * p;
      if (p > least[i] || m > n_max) break;
      least[m] = p;
      t.moebius[m] = (p == least[i]) ? 0 : static_cast<std::int8_t>(-t.moebius[i]);
    }
  }
  for (std::uint32_t p : primes) {
    double lp = std::log(static_cast<double>(p));
    for (std::uint64_t q = p; q <= n_max; q *= p) {
      t.mangoldt[q] = lp;
      if (q > n_max / p) break;
    }
  }
  return t;
}

void save_cache(const PrimeTable& table, const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw Error(ErrorKind::Io, "cannot open " + path.string());
  os.write("DPS1", 4);
  put<double>(os, table.X);
  put<double>(os, table.lambda_cut);
  put<std::uint64_t>(os, table.size());
  for (auto p : table.primes) put<std::uint64_t>(os, p);
  for (auto w : table.logp) put<double>(os, w);
  for (auto v : table.pc) {
    put<double>(os, v.hi);
    put<double>(os, v.lo);
  }
  for (auto v : table.pd) {
    put<double>(os, v.hi);
    put<double>(os, v.lo);
  }
  if (!os) throw Error(ErrorKind::Io, "write failed for " + path.string());
}

PrimeTable load_cache(const std::filesystem::path& path, double c, double d) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error(ErrorKind::Io, "cannot open " + path.string());
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, "DPS1", 4) != 0) throw Error(ErrorKind::Io, "bad prime cache magic");
  PrimeTable t;
  t.X = get<double>(is);
  t.lambda_cut = get<double>(is);
  t.c = c;
  t.d = d;
  auto n = get<std::uint64_t>(is);
  if (n > 60'000'000) throw Error(ErrorKind::Io, "implausible prime count in cache");
  t.primes.resize(n);
  t.logp.resize(n);
  t.pc.resize(n);
  t.pd.resize(n);
  for (auto& p : t.primes) p = get<std::uint64_t>(is);
  for (auto& w : t.logp) w = get<double>(is);
  for (auto& v : t.pc) {
    v.hi = get<double>(is);
    v.lo = get<double>(is);
  }
  for (auto& v : t.pd) {
    v.hi = get<double>(is);
    v.lo = get<double>(is);
  }
  std::size_t stride = std::max<std::size_t>(1, n / 64);
  for (std::size_t i = 0; i < n; i += stride) {
    auto p = static_cast<double>(t.primes[i]);
    DoubleDouble ec = pow_split(p, c);
    DoubleDouble ed = pow_split(p, d);
    if (ec.hi != t.pc[i].hi || ed.hi != t.pd[i].hi) {
      throw Error(ErrorKind::Io, "prime cache was written for different exponents");
    }
  }
  return t;
}

}  // namespace fiveprime
