#pragma once

#include <vector>

namespace resd::models {

struct TechnicalParams {
  double eta_solar = 0.19;
  double solar_nominal_kw_m2 = 0.171;
  double hub_height_m = 85.0;
  double roughness_m = 0.3;
  double cutout_ms = 25.0;
  double turbine_rated_kw = 2350.0;
  // Output in kW at 0, 1, 2, ... m/s hub speed; linear interpolation between knots.
  std::vector<double> power_curve_kw = default_power_curve();
  double eta_in = 0.92;
  double eta_out = 0.926;
  double energy_to_power = 4.0;  // kWh per kW
  double initial_soc = 0.5;

  static std::vector<double> default_power_curve();
  void validate() const;
};

// min{I eta / P_nom, 1}; throws Error(kNegativeIrradiance) for I < 0.
double solar_capacity_factor(double irradiance_kw_m2, const TechnicalParams& p = {});

// Logarithmic profile from 10 m to hub height.
double wind_speed_at_hub(double v10_ms, const TechnicalParams& p = {});

// Power curve at hub speed divided by rated power; zero at or above cutout.
double wind_capacity_factor_at_hub(double v_hub_ms, const TechnicalParams& p = {});
double wind_capacity_factor(double v10_ms, const TechnicalParams& p = {});

}  // namespace resd::models
