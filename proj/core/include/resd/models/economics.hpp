#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

namespace resd::models {

enum Component : int { kSolarPv = 0, kWindTurbine = 1, kDiesel = 2, kBattery = 3 };
inline constexpr int kNumComponents = 4;
inline constexpr std::array<const char*, kNumComponents> kComponentNames{"solar", "wind", "diesel", "battery"};

struct CostEntry {
  double c_inv = 0.0;  // EUR/kW
  double c_fix = 0.0;  // EUR/(kW yr)
  double c_var = 0.0;  // EUR/kWh
};

struct ComponentCosts {
  std::array<CostEntry, kNumComponents> entries{{
      {883.3, 17.9, 0.0},
      {2283.7, 26.9, 0.011},
      {2391.8, 0.0, 0.242},
      {1550.0, 31.0, 0.0},
  }};

  const CostEntry& operator[](int c) const { return entries[static_cast<std::size_t>(c)]; }
  CostEntry& operator[](int c) { return entries[static_cast<std::size_t>(c)]; }
  void validate() const;
};

struct EconomicParams {
  double interest = 0.08;
  int horizon_years = 25;
  double pr_fuel = 448.38;        // EUR/t
  double pr_logistics = 103.47;   // EUR/t
  double lhv_kwh_per_t = 11214.46;
  double eta_therm = 0.41;
  double co_maintenance = 0.042;  // EUR/kWh
  double pr_co2 = 80.821;         // EUR/t CO2
  double fa_emission = 0.62;      // t/MWh
  double co_corr_p = 1.028;
  double co_corr_e = 1.0;
  // Monthly producer price index values per year.
  std::map<int, std::vector<double>> ppi;

  void validate() const;
};

double annuity_factor(double interest, int years);

struct DieselCostBreakdown {
  double fuel = 0.0;
  double start_up = 0.0;
  double maintenance = 0.0;
  double dispatch = 0.0;
  double co2 = 0.0;
  double reduction = 0.0;
  double total = 0.0;
};

// Fuel, maintenance, 1 % dispatch surcharge on fuel + CO2, CO2 allowance.
DieselCostBreakdown diesel_variable_cost(const EconomicParams& econ = {});
// Same sum with an externally given CO2 term.
DieselCostBreakdown diesel_variable_cost(const EconomicParams& econ, double co2_per_kwh);

double annual_ppi(const std::map<int, std::vector<double>>& ppi, int year);
// price * ppi(target_year) / ppi(year); throws Error(kMissingYear).
double inflation_adjust(double price, int year, const std::map<int, std::vector<double>>& ppi,
                        int target_year = 2022);

}  // namespace resd::models
