#include "resd/models/physics.hpp"

#include <algorithm>
#include <cmath>

#include "resd/errors.hpp"

namespace resd::models {

std::vector<double> TechnicalParams::default_power_curve() {
  // Enercon E-82 E2 (2.35 MW) datasheet values, 0..25 m/s.
  return {0.0,    0.0,    3.0,    25.0,   82.0,   174.0,  321.0,  532.0,  815.0,
          1180.0, 1580.0, 1890.0, 2100.0, 2250.0, 2350.0, 2350.0, 2350.0, 2350.0,
          2350.0, 2350.0, 2350.0, 2350.0, 2350.0, 2350.0, 2350.0, 2350.0};
}

void TechnicalParams::validate() const {
  if (!(eta_solar > 0.0 && solar_nominal_kw_m2 > 0.0 && hub_height_m > 0.0 && roughness_m > 0.0 &&
        cutout_ms > 0.0 && turbine_rated_kw > 0.0 && eta_in > 0.0 && eta_out > 0.0 &&
        energy_to_power > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "technical parameters must be positive");
  }
  if (initial_soc < 0.0 || initial_soc > 1.0) {
    throw Error(ErrorCode::kInvalidArgument, "initial state of charge must lie in [0, 1]");
  }
  if (power_curve_kw.size() < 2) throw Error(ErrorCode::kInvalidArgument, "power curve needs two knots");
  for (double v : power_curve_kw) {
    if (v < 0.0 || v > turbine_rated_kw) {
      throw Error(ErrorCode::kInvalidArgument, "power curve values must lie in [0, rated]");
    }
  }
}

double solar_capacity_factor(double irradiance_kw_m2, const TechnicalParams& p) {
  if (irradiance_kw_m2 < 0.0) {
    throw Error(ErrorCode::kNegativeIrradiance, "irradiance must be nonnegative");
  }
  return std::min(irradiance_kw_m2 * p.eta_solar / p.solar_nominal_kw_m2, 1.0);
}

double wind_speed_at_hub(double v10_ms, const TechnicalParams& p) {
  return v10_ms * std::log(p.hub_height_m / p.roughness_m) / std::log(10.0 / p.roughness_m);
}

double wind_capacity_factor_at_hub(double v_hub_ms, const TechnicalParams& p) {
  if (!(v_hub_ms > 0.0) || v_hub_ms >= p.cutout_ms) return 0.0;
  const auto& curve = p.power_curve_kw;
  const double last = static_cast<double>(curve.size() - 1);
  double kw;
  if (v_hub_ms >= last) {
    kw = curve.back();
  } else {
    const auto k = static_cast<std::size_t>(std::floor(v_hub_ms));
    const double frac = v_hub_ms - static_cast<double>(k);
    kw = curve[k] + frac * (curve[k + 1] - curve[k]);
  }
  return std::clamp(kw / p.turbine_rated_kw, 0.0, 1.0);
}

double wind_capacity_factor(double v10_ms, const TechnicalParams& p) {
  return wind_capacity_factor_at_hub(wind_speed_at_hub(v10_ms, p), p);
}

}  // namespace resd::models
