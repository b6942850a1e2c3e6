#pragma once

// Parameter space of the two-inequality system, its derived scales, and the
// three-way split of the (x, y) frequency plane.

#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"

namespace fiveprime {

/// Upper limit on the exponents, 39/37.
inline constexpr double kExponentCeiling = 39.0 / 37.0;

struct SystemParams {
  double c = 1.03;
  double d = 1.01;
  double alpha = 0.0;
  double beta = 0.0;
  double N1 = 0.0;
  double N2 = 0.0;
  double lambda_cut = 0.1;
  double eta = 0.01;
  int log_power = 201;
  // Explicit window widths. When set they replace the X^{-(39/37-c)}(log X)^k
  // formula (desk-scale experiments always set them).
  std::optional<double> eps1;
  std::optional<double> eps2;
};

/// Throws Error(InvalidParams) naming the first violated invariant.
void validate(const SystemParams& params);

/// 5^{1 - d/c}, the upper end of the admissible ratio band.
double ratio_ceiling(double c, double d);

struct DerivedScales {
  double X = 0.0;
  double eps1 = 0.0;
  double eps2 = 0.0;
  double K1 = 0.0;
  double K2 = 0.0;
  double tau1 = 0.0;
  double tau2 = 0.0;
  // Natural logs of eps1/eps2; finite even when the (log X)^k factor
  // overflows eps to +inf.
  double log_eps1 = 0.0;
  double log_eps2 = 0.0;

  /// tau1 < K1 and tau2 < K2, i.e. the three regions are nested as intended.
  bool windows_ordered() const noexcept { return tau1 < K1 && tau2 < K2; }
};

DerivedScales derive_scales(const SystemParams& params);

enum class RegionLabel { Omega1, Omega2, Omega3 };

std::string_view to_string(RegionLabel label) noexcept;

/// Omega1 iff max(|x|/tau1, |y|/tau2) < 1; Omega3 iff max(|x|/K1, |y|/K2) > 1;
/// Omega2 otherwise. Boundary ties go to Omega2. If the windows are not
/// ordered the Omega1 test wins.
RegionLabel classify_region(const DerivedScales& scales, double x, double y);

struct Targets {
  double N1 = 0.0;
  double N2 = 0.0;
};

/// N1 = scale * X^c, N2 = ratio * N1^{d/c}. With the default scale = 1 the
/// re-derived X = N1^{1/c} equals the input X.
Targets pick_targets(double c, double d, double X, double ratio, double scale = 1.0);

/// Convenience for experiments: targets from pick_targets, alpha/beta
/// bracketing the ratio, log_power = 0 and explicit windows.
SystemParams experiment_params(double c, double d, double X, double ratio, double lambda_cut,
                               double eps1, double eps2, double target_scale = 1.0);

void to_json(nlohmann::json& j, const SystemParams& p);
void from_json(const nlohmann::json& j, SystemParams& p);
void to_json(nlohmann::json& j, const DerivedScales& s);

}  // namespace fiveprime
