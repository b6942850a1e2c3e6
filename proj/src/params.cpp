#include "fiveprime/params.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "json.hpp"

#include "fiveprime/error.hpp"

namespace fiveprime {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::InvalidParams, what);
}

double exp_or_inf(double log_value) {
  if (log_value > std::log(std::numeric_limits<double>::max())) {
    return std::numeric_limits<double>::infinity();
  }
  return std::exp(log_value);
}

}  // namespace

double ratio_ceiling(double c, double d) { return std::pow(5.0, 1.0 - d / c); }

void validate(const SystemParams& p) {
  require(std::isfinite(p.c) && std::isfinite(p.d), "c and d must be finite");
  require(1.0 < p.d, "requires 1 < d");
  require(p.d < p.c, "requires d < c");
  require(p.c < kExponentCeiling, "requires c < 39/37");
  require(1.0 < p.alpha, "requires 1 < alpha");
  require(p.alpha < p.beta, "requires alpha < beta");
  require(p.beta < ratio_ceiling(p.c, p.d), "requires beta < 5^(1-d/c)");
  require(p.N1 > 0.0 && p.N2 > 0.0, "requires N1 > 0 and N2 > 0");
  double ratio = p.N2 / std::pow(p.N1, p.d / p.c);
  {
    std::ostringstream msg;
    msg << "requires alpha <= N2/N1^(d/c) <= beta (ratio = " << ratio << ")";
    require(p.alpha <= ratio && ratio <= p.beta, msg.str());
  }
  require(0.0 < p.lambda_cut && p.lambda_cut < 1.0, "requires 0 < lambda_cut < 1");
  require(p.eta > 0.0, "requires eta > 0");
  require(p.log_power >= 0, "requires log_power >= 0");
  require(!p.eps1 || *p.eps1 > 0.0, "requires eps1 > 0");
  require(!p.eps2 || *p.eps2 > 0.0, "requires eps2 > 0");
  double X = std::pow(p.N1, 1.0 / p.c);
  require(X > 1.0, "requires X = N1^(1/c) > 1");
}

DerivedScales derive_scales(const SystemParams& p) {
  validate(p);
  DerivedScales s;
  s.X = std::pow(p.N1, 1.0 / p.c);
  double logX = std::log(s.X);
  double loglog = p.log_power == 0 ? 0.0 : p.log_power * std::log(logX);

  s.log_eps1 = p.eps1 ? std::log(*p.eps1) : -(kExponentCeiling - p.c) * logX + loglog;
  s.log_eps2 = p.eps2 ? std::log(*p.eps2) : -(kExponentCeiling - p.d) * logX + loglog;
  s.eps1 = p.eps1 ? *p.eps1 : exp_or_inf(s.log_eps1);
  s.eps2 = p.eps2 ? *p.eps2 : exp_or_inf(s.log_eps2);
  s.K1 = std::exp(std::log(logX) - s.log_eps1);
  s.K2 = std::exp(std::log(logX) - s.log_eps2);
  s.tau1 = std::pow(s.X, 0.75 - p.c - p.eta);
  s.tau2 = std::pow(s.X, 0.75 - p.d - p.eta);
  return s;
}

std::string_view to_string(RegionLabel label) noexcept {
  switch (label) {
    case RegionLabel::Omega1: return "Omega1";
    case RegionLabel::Omega2: return "Omega2";
    case RegionLabel::Omega3: return "Omega3";
  }
  return "?";
}

RegionLabel classify_region(const DerivedScales& s, double x, double y) {
  double ax = std::fabs(x);
  double ay = std::fabs(y);
  if (std::max(ax / s.tau1, ay / s.tau2) < 1.0) return RegionLabel::Omega1;
  if (std::max(ax / s.K1, ay / s.K2) > 1.0) return RegionLabel::Omega3;
  return RegionLabel::Omega2;
}

Targets pick_targets(double c, double d, double X, double ratio, double scale) {
  double ceiling = ratio_ceiling(c, d);
  if (!(1.0 < ratio && ratio < ceiling)) {
    std::ostringstream msg;
    msg << "ratio " << ratio << " outside (1, " << ceiling << ")";
    throw Error(ErrorKind::RatioOutOfBand, msg.str());
  }
  if (!(X > 1.0) || !(scale > 0.0)) {
    throw Error(ErrorKind::InvalidParams, "pick_targets requires X > 1 and scale > 0");
  }
  Targets t;
  t.N1 = scale * std::pow(X, c);
  t.N2 = ratio * std::pow(t.N1, d / c);
  return t;
}

SystemParams experiment_params(double c, double d, double X, double ratio, double lambda_cut,
                               double eps1, double eps2, double target_scale) {
  Targets t = pick_targets(c, d, X, ratio, target_scale);
  SystemParams p;
  p.c = c;
  p.d = d;
  p.N1 = t.N1;
  p.N2 = t.N2;
  double ceiling = ratio_ceiling(c, d);
  p.alpha = 1.0 + 0.5 * (ratio - 1.0);
  p.beta = ratio + 0.5 * (ceiling - ratio);
  p.lambda_cut = lambda_cut;
  p.log_power = 0;
  p.eps1 = eps1;
  p.eps2 = eps2;
  return p;
}

void to_json(nlohmann::json& j, const SystemParams& p) {
  j = nlohmann::json{{"c", p.c},           {"d", p.d},   {"alpha", p.alpha},
                     {"beta", p.beta},     {"N1", p.N1}, {"N2", p.N2},
                     {"lambda_cut", p.lambda_cut},       {"eta", p.eta},
                     {"log_power", p.log_power}};
  if (p.eps1) j["eps1"] = *p.eps1;
  if (p.eps2) j["eps2"] = *p.eps2;
}

void from_json(const nlohmann::json& j, SystemParams& p) {
  static const char* known[] = {"c",    "d",          "alpha", "beta",      "N1", "N2",
                                "lambda_cut", "eta", "log_power", "eps1", "eps2"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : known) ok = ok || it.key() == k;
    if (!ok) throw Error(ErrorKind::InvalidParams, "unknown config key '" + it.key() + "'");
  }
  if (j.contains("c")) j.at("c").get_to(p.c);
  if (j.contains("d")) j.at("d").get_to(p.d);
  if (j.contains("alpha")) j.at("alpha").get_to(p.alpha);
  if (j.contains("beta")) j.at("beta").get_to(p.beta);
  if (j.contains("N1")) j.at("N1").get_to(p.N1);
  if (j.contains("N2")) j.at("N2").get_to(p.N2);
  if (j.contains("lambda_cut")) j.at("lambda_cut").get_to(p.lambda_cut);
  if (j.contains("eta")) j.at("eta").get_to(p.eta);
  if (j.contains("log_power")) j.at("log_power").get_to(p.log_power);
  if (j.contains("eps1")) p.eps1 = j.at("eps1").get<double>();
  if (j.contains("eps2")) p.eps2 = j.at("eps2").get<double>();
}

void to_json(nlohmann::json& j, const DerivedScales& s) {
  j = nlohmann::json{{"X", s.X},       {"eps1", s.eps1}, {"eps2", s.eps2}, {"K1", s.K1},
                     {"K2", s.K2},     {"tau1", s.tau1}, {"tau2", s.tau2},
                     {"log_eps1", s.log_eps1}, {"log_eps2", s.log_eps2}};
}

}  // namespace fiveprime
