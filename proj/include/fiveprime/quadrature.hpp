#pragma once

// Trapezoid evaluation of the smoothed integral
//   D = int int S(x, y)^5 e(-N1 x - N2 y) phi_eps1(x) phi_eps2(y) dx dy
// over the Gaussian support box, split by region.

#include <array>
#include <cstddef>
#include <string_view>

#include "fiveprime/numeric.hpp"
#include "fiveprime/params.hpp"
#include "fiveprime/primes.hpp"

namespace fiveprime {

enum class Region { All, Omega1, Omega2, Omega3 };

std::string_view to_string(Region region) noexcept;
Region parse_region(std::string_view text);

struct QuadratureSteps {
  double step_x = 0.0;
  double step_y = 0.0;
  bool use_symmetry = true;  // integrate half the plane and use f(-x,-y) = conj f(x,y)
  unsigned threads = 1;
};

/// Largest admissible steps: 1/(20 (5 X^c + |N1|)) and 1/(20 (5 X^d + |N2|)), X from the table.
QuadratureSteps max_steps(const PrimeTable& table, const SystemParams& params);

inline constexpr double kMaxQuadraturePoints = 2e10;
inline constexpr double kTruncationWidths = 8.0;

struct IntegralResult {
  ComplexValue value;
  Region region = Region::All;
  double x_min = 0.0, x_max = 0.0;
  double y_min = 0.0, y_max = 0.0;
  double step_x = 0.0, step_y = 0.0;
  double tail_bound = 0.0;     // W^5 times the Gaussian mass outside the box, W = sum log p
  double trivial_bound = 0.0;  // W^5 times the quadrature mass of phi_eps1 phi_eps2 over the region
  double fourth_moment = 0.0;  // quadrature of |S|^4 phi_eps1 phi_eps2 over the region
  double max_abs_S = 0.0;      // max |S| over grid points in the region
  std::size_t points = 0;      // grid points in the region (full plane count)
};

/// The region piece of D. Throws StepTooCoarse if a step exceeds max_steps.
IntegralResult integrate_D(const PrimeTable& table, const SystemParams& params, const DerivedScales& scales,
                           Region region, const QuadratureSteps& steps);

struct RegionReport {
  IntegralResult all;
  std::array<IntegralResult, 3> pieces;  // Omega1, Omega2, Omega3
  double ratio_d2_d1 = 0.0;              // |D2| / |D1|
  double abs_d3 = 0.0;
  double fourth_moment_target = 0.0;     // X^2 (log X)^6
  double omega2_sup_target = 0.0;        // X^{34/37} (log X)^{205}
};

/// All three pieces and the full integral from a single pass over the grid.
RegionReport region_report(const PrimeTable& table, const SystemParams& params, const DerivedScales& scales,
                           const QuadratureSteps& steps);

}  // namespace fiveprime
