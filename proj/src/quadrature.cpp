#include "fiveprime/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "fiveprime/error.hpp"
#include "fiveprime/expsum.hpp"

namespace fiveprime {

namespace {

constexpr int kPieces = 3;

struct Tally {
  std::array<ComplexValue, kPieces> value{};
  std::array<double, kPieces> fourth{};
  std::array<double, kPieces> mass{};
  std::array<double, kPieces> max_abs{};
  std::array<std::size_t, kPieces> points{};
};

struct Columns {
  std::ptrdiff_t ny = 0;
  std::size_t ncols = 0;
  std::vector<double> br, bi;    // e(p^d y_l), prime-major: [p * ncols + l + ny]
  std::vector<double> eyr, eyi;  // e(-N2 y_l)
  std::vector<double> gy;        // trapezoid weight times phi_eps2(y_l)
  std::vector<double> inner;     // |y_l| / tau2
  std::vector<double> outer;     // |y_l| / K2
};

// Same predicates as classify_region, with the y ratios precomputed.
int piece_of(double ax_inner, double ax_outer, double ay_inner, double ay_outer) {
  if (std::max(ax_inner, ay_inner) < 1.0) return 0;
  if (std::max(ax_outer, ay_outer) > 1.0) return 2;
  return 1;
}

// Per-region partial sums of one block of grid points.
struct RowSum {
  std::array<ComplexValue, kPieces> value{};
  std::array<double, kPieces> fourth{};
  std::array<double, kPieces> mass{};

  RowSum& operator+=(const RowSum& o) {
    for (int r = 0; r < kPieces; ++r) {
      value[r] += o.value[r];
      fourth[r] += o.fourth[r];
      mass[r] += o.mass[r];
    }
    return *this;
  }
  friend RowSum operator+(RowSum a, const RowSum& b) { return a += b; }
};

constexpr std::size_t kLeaf = 16;

template <class T, class Leaf>
T tree_sum(std::size_t begin, std::size_t end, const Leaf& leaf) {
  if (end - begin <= kLeaf) return leaf(begin, end);
  std::size_t mid = begin + (end - begin) / 2;
  return tree_sum<T>(begin, mid, leaf) + tree_sum<T>(mid, end, leaf);
}

// One row of the grid, x fixed, y over column index [first, last]. The sum is
// a pairwise tree over the row whose shape depends only on the row length;
// each leaf evaluates its (at most 16) points with vectorizable loops.
Tally integrate_row(double x, double wx, std::size_t first, std::size_t last, const PrimeTable& table,
                    const SystemParams& params, const DerivedScales& scales, double eps1, const Columns& cols) {
  std::size_t P = table.size();
  std::vector<double> ar(P), ai(P);
  for (std::size_t p = 0; p < P; ++p) {
    ComplexValue v = table.logp[p] * unit_phasor(reduce_phase(x, table.pc[p]));
    ar[p] = v.real();
    ai[p] = v.imag();
  }
  ComplexValue ex = unit_phasor(-reduce_phase(x, DoubleDouble{params.N1, 0.0}));
  const double exr = ex.real(), exi = ex.imag();
  double gx = wx * phi_delta(eps1, x);
  double ax_inner = std::fabs(x) / scales.tau1;
  double ax_outer = std::fabs(x) / scales.K1;

  std::size_t count = last >= first ? last - first + 1 : 0;
  Tally t;
  auto leaf = [&](std::size_t b, std::size_t e) {
    const std::size_t n = e - b;
    const std::size_t c0 = first + b;
    double sr[kLeaf] = {}, si[kLeaf] = {};
    for (std::size_t p = 0; p < P; ++p) {
      const double* xr = &cols.br[p * cols.ncols + c0];
      const double* xi = &cols.bi[p * cols.ncols + c0];
      const double qr = ar[p], qi = ai[p];
      for (std::size_t k = 0; k < n; ++k) {
        sr[k] += qr * xr[k] - qi * xi[k];
        si[k] += qr * xi[k] + qi * xr[k];
      }
    }
    double vr[kLeaf], vi[kLeaf], four[kLeaf], g[kLeaf], abs2[kLeaf];
    for (std::size_t k = 0; k < n; ++k) {
      double a2 = sr[k] * sr[k] + si[k] * si[k];
      double s2r = sr[k] * sr[k] - si[k] * si[k], s2i = 2.0 * sr[k] * si[k];
      double s4r = s2r * s2r - s2i * s2i, s4i = 2.0 * s2r * s2i;
      double s5r = s4r * sr[k] - s4i * si[k], s5i = s4r * si[k] + s4i * sr[k];
      double er = exr * cols.eyr[c0 + k] - exi * cols.eyi[c0 + k];
      double ei = exr * cols.eyi[c0 + k] + exi * cols.eyr[c0 + k];
      double w = gx * cols.gy[c0 + k];
      vr[k] = (s5r * er - s5i * ei) * w;
      vi[k] = (s5r * ei + s5i * er) * w;
      four[k] = a2 * a2 * w;
      g[k] = w;
      abs2[k] = a2;
    }
    RowSum out;
    for (std::size_t k = 0; k < n; ++k) {
      int idx = piece_of(ax_inner, ax_outer, cols.inner[c0 + k], cols.outer[c0 + k]);
      out.value[idx] += ComplexValue(vr[k], vi[k]);
      out.fourth[idx] += four[k];
      out.mass[idx] += g[k];
      t.max_abs[idx] = std::max(t.max_abs[idx], abs2[k]);
      ++t.points[idx];
    }
    return out;
  };
  RowSum total = tree_sum<RowSum>(0, count, leaf);
  t.value = total.value;
  t.fourth = total.fourth;
  t.mass = total.mass;
  for (double& m : t.max_abs) m = std::sqrt(m);
  return t;
}

RegionReport run(const PrimeTable& table, const SystemParams& params, const DerivedScales& scales,
                 const QuadratureSteps& steps) {
  if (table.c != params.c || table.d != params.d) {
    throw Error(ErrorKind::InvalidParams, "prime table was built for different exponents");
  }
  QuadratureSteps limit = max_steps(table, params);
  if (!(steps.step_x > 0.0) || !(steps.step_y > 0.0) || steps.step_x > limit.step_x || steps.step_y > limit.step_y) {
    throw Error(ErrorKind::StepTooCoarse, "steps must satisfy h <= 1/(20 (5 X^c + |N1|)) and its y analogue");
  }
  double eps1 = scales.eps1;
  double eps2 = scales.eps2;
  if (!(eps1 > 0.0 && eps2 > 0.0 && std::isfinite(eps1) && std::isfinite(eps2))) {
    throw Error(ErrorKind::InvalidParams, "integrate_D requires finite positive eps1, eps2");
  }
  double hx = steps.step_x;
  double hy = steps.step_y;
  auto nx = static_cast<std::ptrdiff_t>(std::ceil(kTruncationWidths / (eps1 * hx)));
  auto ny = static_cast<std::ptrdiff_t>(std::ceil(kTruncationWidths / (eps2 * hy)));
  double total_points = static_cast<double>(2 * nx + 1) * static_cast<double>(2 * ny + 1);
  if (total_points > kMaxQuadraturePoints) throw Error(ErrorKind::GridTooLarge, "quadrature grid exceeds 2e10 points");
  std::size_t P = table.size();
  if (static_cast<double>(2 * ny + 1) * static_cast<double>(P) > 1e8) {
    throw Error(ErrorKind::GridTooLarge, "y phasor table exceeds 1e8 entries");
  }

  Columns cols;
  cols.ny = ny;
  auto ncols = static_cast<std::size_t>(2 * ny + 1);
  cols.ncols = ncols;
  cols.br.resize(ncols * P);
  cols.bi.resize(ncols * P);
  cols.eyr.resize(ncols);
  cols.eyi.resize(ncols);
  cols.gy.resize(ncols);
  cols.inner.resize(ncols);
  cols.outer.resize(ncols);
  for (std::ptrdiff_t l = -ny; l <= ny; ++l) {
    double y = static_cast<double>(l) * hy;
    auto col = static_cast<std::size_t>(l + ny);
    for (std::size_t p = 0; p < P; ++p) {
      ComplexValue v = unit_phasor(reduce_phase(y, table.pd[p]));
      cols.br[p * ncols + col] = v.real();
      cols.bi[p * ncols + col] = v.imag();
    }
    ComplexValue e = unit_phasor(-reduce_phase(y, DoubleDouble{params.N2, 0.0}));
    cols.eyr[col] = e.real();
    cols.eyi[col] = e.imag();
    double wy = (l == -ny || l == ny) ? 0.5 * hy : hy;
    cols.gy[col] = wy * phi_delta(eps2, y);
    cols.inner[col] = std::fabs(y) / scales.tau2;
    cols.outer[col] = std::fabs(y) / scales.K2;
  }

  // Rows run over x index k in [k_first, nx]. With symmetry only k >= 0 is
  // visited, and row 0 only covers y index l >= 1; the origin is added once.
  std::ptrdiff_t k_first = steps.use_symmetry ? 0 : -nx;
  auto rows = static_cast<std::size_t>(nx - k_first + 1);
  std::vector<Tally> tallies(rows);
  parallel_chunks(rows, steps.threads, [&](std::size_t b, std::size_t e, std::size_t) {
    for (std::size_t r = b; r < e; ++r) {
      std::ptrdiff_t k = k_first + static_cast<std::ptrdiff_t>(r);
      double x = static_cast<double>(k) * hx;
      double wx = (k == -nx || k == nx) ? 0.5 * hx : hx;
      std::ptrdiff_t first = (steps.use_symmetry && k == 0) ? 1 : -ny;
      tallies[r] = integrate_row(x, wx, static_cast<std::size_t>(first + ny), static_cast<std::size_t>(2 * ny), table,
                                 params, scales, eps1, cols);
    }
  });

  Tally sum;
  for (int r = 0; r < kPieces; ++r) {
    sum.value[r] = pairwise_sum_n<ComplexValue>(0, rows, [&](std::size_t i) { return tallies[i].value[r]; });
    sum.fourth[r] = pairwise_sum_n<double>(0, rows, [&](std::size_t i) { return tallies[i].fourth[r]; });
    sum.mass[r] = pairwise_sum_n<double>(0, rows, [&](std::size_t i) { return tallies[i].mass[r]; });
    for (const Tally& t : tallies) {
      sum.max_abs[r] = std::max(sum.max_abs[r], t.max_abs[r]);
      sum.points[r] += t.points[r];
    }
  }
  if (steps.use_symmetry) {
    Tally origin = integrate_row(0.0, nx == 0 ? 0.5 * hx : hx, static_cast<std::size_t>(ny),
                                 static_cast<std::size_t>(ny), table, params, scales, eps1, cols);
    for (int r = 0; r < kPieces; ++r) {
      sum.value[r] = ComplexValue(2.0 * sum.value[r].real(), 0.0) + origin.value[r];
      sum.fourth[r] = 2.0 * sum.fourth[r] + origin.fourth[r];
      sum.mass[r] = 2.0 * sum.mass[r] + origin.mass[r];
      sum.max_abs[r] = std::max(sum.max_abs[r], origin.max_abs[r]);
      sum.points[r] = 2 * sum.points[r] + origin.points[r];
    }
  }

  double W = chebyshev_weight(table);
  double W5 = std::pow(W, 5);
  double bx = static_cast<double>(nx) * hx;
  double by = static_cast<double>(ny) * hy;
  // Mass of phi_eps outside [-B, B] is erfc(sqrt(pi) eps B).
  double outside = std::erfc(std::sqrt(std::numbers::pi) * eps1 * bx) +
                   std::erfc(std::sqrt(std::numbers::pi) * eps2 * by);

  auto make = [&](Region region, ComplexValue value, double fourth, double mass, double max_abs, std::size_t pts) {
    IntegralResult res;
    res.value = value;
    res.region = region;
    res.x_min = -bx;
    res.x_max = bx;
    res.y_min = -by;
    res.y_max = by;
    res.step_x = hx;
    res.step_y = hy;
    res.tail_bound = W5 * outside;
    res.trivial_bound = W5 * mass;
    res.fourth_moment = fourth;
    res.max_abs_S = max_abs;
    res.points = pts;
    return res;
  };

  RegionReport rep;
  const Region names[kPieces] = {Region::Omega1, Region::Omega2, Region::Omega3};
  for (int r = 0; r < kPieces; ++r) {
    rep.pieces[r] = make(names[r], sum.value[r], sum.fourth[r], sum.mass[r], sum.max_abs[r], sum.points[r]);
  }
  rep.all = make(Region::All, pairwise_sum(std::vector<ComplexValue>(sum.value.begin(), sum.value.end())),
                 sum.fourth[0] + sum.fourth[1] + sum.fourth[2], sum.mass[0] + sum.mass[1] + sum.mass[2],
                 std::max({sum.max_abs[0], sum.max_abs[1], sum.max_abs[2]}),
                 sum.points[0] + sum.points[1] + sum.points[2]);
  double d1 = std::abs(rep.pieces[0].value);
  rep.ratio_d2_d1 = d1 > 0.0 ? std::abs(rep.pieces[1].value) / d1 : std::numeric_limits<double>::infinity();
  rep.abs_d3 = std::abs(rep.pieces[2].value);
  double logX = std::log(scales.X);
  rep.fourth_moment_target = scales.X * scales.X * std::pow(logX, 6);
  rep.omega2_sup_target = std::pow(scales.X, 34.0 / 37.0) * std::pow(logX, 205);
  return rep;
}

}  // namespace

std::string_view to_string(Region region) noexcept {
  switch (region) {
    case Region::All: return "all";
    case Region::Omega1: return "Omega1";
    case Region::Omega2: return "Omega2";
    case Region::Omega3: return "Omega3";
  }
  return "?";
}

Region parse_region(std::string_view text) {
  if (text == "all") return Region::All;
  if (text == "Omega1" || text == "omega1" || text == "1") return Region::Omega1;
  if (text == "Omega2" || text == "omega2" || text == "2") return Region::Omega2;
  if (text == "Omega3" || text == "omega3" || text == "3") return Region::Omega3;
  throw Error(ErrorKind::Usage, "unknown region '" + std::string(text) + "'");
}

QuadratureSteps max_steps(const PrimeTable& table, const SystemParams& params) {
  QuadratureSteps s;
  s.step_x = 1.0 / (20.0 * (5.0 * std::pow(table.X, params.c) + std::fabs(params.N1)));
  s.step_y = 1.0 / (20.0 * (5.0 * std::pow(table.X, params.d) + std::fabs(params.N2)));
  return s;
}

IntegralResult integrate_D(const PrimeTable& table, const SystemParams& params, const DerivedScales& scales,
                           Region region, const QuadratureSteps& steps) {
  RegionReport rep = run(table, params, scales, steps);
  switch (region) {
    case Region::All: return rep.all;
    case Region::Omega1: return rep.pieces[0];
    case Region::Omega2: return rep.pieces[1];
    case Region::Omega3: return rep.pieces[2];
  }
  return rep.all;
}

RegionReport region_report(const PrimeTable& table, const SystemParams& params, const DerivedScales& scales,
                           const QuadratureSteps& steps) {
  return run(table, params, scales, steps);
}

}  // namespace fiveprime
