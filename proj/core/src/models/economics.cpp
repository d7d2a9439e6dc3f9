#include "resd/models/economics.hpp"

#include <cmath>
#include <numeric>

#include "resd/errors.hpp"

namespace resd::models {

void ComponentCosts::validate() const {
  for (int c = 0; c < kNumComponents; ++c) {
    const CostEntry& e = entries[static_cast<std::size_t>(c)];
    if (!(e.c_inv >= 0.0 && e.c_fix >= 0.0 && e.c_var >= 0.0)) {
      throw Error(ErrorCode::kInvalidArgument, std::string("negative or non-finite cost for ") + kComponentNames[c]);
    }
  }
}

void EconomicParams::validate() const {
  if (!(interest > 0.0) || horizon_years < 1) throw Error(ErrorCode::kInvalidArgument, "interest > 0 and horizon >= 1 required");
  if (!(lhv_kwh_per_t > 0.0 && eta_therm > 0.0)) throw Error(ErrorCode::kInvalidArgument, "LHV and efficiency must be positive");
  for (const auto& [year, months] : ppi) {
    if (months.empty()) throw Error(ErrorCode::kInvalidArgument, "empty ppi series for " + std::to_string(year));
    for (double v : months) {
      if (!(v > 0.0)) throw Error(ErrorCode::kInvalidArgument, "ppi values must be positive");
    }
  }
}

double annuity_factor(double interest, int years) {
  if (!(interest > 0.0) || years < 1) throw Error(ErrorCode::kInvalidArgument, "annuity factor needs i > 0, T >= 1");
  const double q = std::pow(1.0 + interest, years);
  const double qm1 = std::expm1(years * std::log1p(interest));
  return qm1 / (interest * q);
}

DieselCostBreakdown diesel_variable_cost(const EconomicParams& econ, double co2_per_kwh) {
  DieselCostBreakdown d;
  d.fuel = (econ.pr_fuel + econ.pr_logistics) / (econ.lhv_kwh_per_t * econ.eta_therm);
  d.maintenance = econ.co_maintenance;
  d.co2 = co2_per_kwh;
  d.dispatch = 0.01 * (d.fuel + d.co2);
  d.total = d.fuel + d.start_up + d.maintenance + d.dispatch + d.co2 + d.reduction;
  return d;
}

DieselCostBreakdown diesel_variable_cost(const EconomicParams& econ) {
  const double co2 = econ.pr_co2 * econ.fa_emission * 1e-3 * econ.co_corr_p * econ.co_corr_e;
  return diesel_variable_cost(econ, co2);
}

double annual_ppi(const std::map<int, std::vector<double>>& ppi, int year) {
  const auto it = ppi.find(year);
  if (it == ppi.end() || it->second.empty()) {
    throw Error(ErrorCode::kMissingYear, "no producer price index for " + std::to_string(year));
  }
  return std::accumulate(it->second.begin(), it->second.end(), 0.0) / static_cast<double>(it->second.size());
}

double inflation_adjust(double price, int year, const std::map<int, std::vector<double>>& ppi, int target_year) {
  return price * annual_ppi(ppi, target_year) / annual_ppi(ppi, year);
}

}  // namespace resd::models
