#include <cmath>
#include <complex>

#include "doctest.h"
#include "fiveprime/counting.hpp"
#include "fiveprime/error.hpp"
#include "fiveprime/quadrature.hpp"

using namespace fiveprime;

namespace {

struct Instance {
  PrimeTable table;
  SystemParams params;
  DerivedScales scales;
};

Instance small(double eps) {
  Instance in{sieve(20.0, 0.5, 1.03, 1.01), experiment_params(1.03, 1.01, 20.0, 1.03, 0.5, eps, eps, 3.75), {}};
  in.scales = derive_scales(in.params);
  return in;
}

double rel(ComplexValue a, ComplexValue b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("step preconditions and region names") {
  Instance in = small(8.0);
  QuadratureSteps s = max_steps(in.table, in.params);
  CHECK(s.step_x == doctest::Approx(1.0 / (20.0 * (5.0 * std::pow(20.0, 1.03) + in.params.N1))));
  QuadratureSteps coarse = s;
  coarse.step_x *= 1.5;
  CHECK_THROWS_AS(integrate_D(in.table, in.params, in.scales, Region::All, coarse), Error);
  CHECK(parse_region("Omega2") == Region::Omega2);
  CHECK(to_string(Region::Omega3) == "Omega3");
  CHECK_THROWS_AS(parse_region("Omega4"), Error);
}

TEST_CASE("full integral equals the smoothed count, with and without symmetry") {
  Instance in = small(8.0);
  QuadratureSteps s = max_steps(in.table, in.params);
  IntegralResult half = integrate_D(in.table, in.params, in.scales, Region::All, s);
  s.use_symmetry = false;
  IntegralResult full = integrate_D(in.table, in.params, in.scales, Region::All, s);
  double smoothed = smoothed_count(in.table, in.params, 8.0, 8.0).weighted_count;
  REQUIRE(smoothed > 0.0);
  CHECK(rel(half.value, full.value) < 1e-10);
  CHECK(std::fabs(full.value.real() - smoothed) <= 1e-8 * smoothed);
  CHECK(std::fabs(full.value.imag()) <= 1e-8 * smoothed);
  CHECK(half.value.imag() == 0.0);
  CHECK(full.points == half.points);
  CHECK(half.tail_bound < 1e-20 * smoothed);

  QuadratureSteps threaded = max_steps(in.table, in.params);
  threaded.threads = 3;
  IntegralResult t3 = integrate_D(in.table, in.params, in.scales, Region::All, threaded);
  CHECK(t3.value == half.value);
  CHECK(t3.fourth_moment == half.fourth_moment);
}

TEST_CASE("step refinement") {
  Instance in = small(8.0);
  QuadratureSteps s = max_steps(in.table, in.params);
  IntegralResult a = integrate_D(in.table, in.params, in.scales, Region::All, s);
  s.step_x /= 2;
  s.step_y /= 2;
  IntegralResult b = integrate_D(in.table, in.params, in.scales, Region::All, s);
  CHECK(rel(a.value, b.value) < 0.01);
}

TEST_CASE("region pieces add up and respect their bounds") {
  Instance in = small(4.0);
  REQUIRE(in.scales.windows_ordered());
  QuadratureSteps s = max_steps(in.table, in.params);
  RegionReport rep = region_report(in.table, in.params, in.scales, s);
  ComplexValue sum = rep.pieces[0].value + rep.pieces[1].value + rep.pieces[2].value;
  CHECK(std::abs(sum - rep.all.value) <= 1e-10 * std::abs(rep.all.value));
  CHECK(rep.pieces[0].points + rep.pieces[1].points + rep.pieces[2].points == rep.all.points);
  for (const IntegralResult& r : rep.pieces) CHECK(r.points > 0);
  CHECK(std::abs(rep.pieces[0].value) > 0.0);
  CHECK(rep.abs_d3 <= rep.pieces[2].trivial_bound);
  CHECK(rep.pieces[2].tail_bound == rep.all.tail_bound);
  CHECK(rep.all.max_abs_S <= chebyshev_weight(in.table) * (1 + 1e-12));
  CHECK(rep.pieces[0].max_abs_S == doctest::Approx(chebyshev_weight(in.table)));
  CHECK(rep.ratio_d2_d1 == doctest::Approx(std::abs(rep.pieces[1].value) / std::abs(rep.pieces[0].value)));

  IntegralResult d2 = integrate_D(in.table, in.params, in.scales, Region::Omega2, s);
  CHECK(d2.value == rep.pieces[1].value);
  CHECK(d2.region == Region::Omega2);
}
