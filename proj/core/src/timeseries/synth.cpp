#include "resd/timeseries/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "resd/errors.hpp"

namespace resd::ts {
namespace {

constexpr double kPi = 3.14159265358979323846;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  // Box-Muller on the engine's own uniforms keeps streams identical across
  // standard library implementations.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * kPi * u2);
    has_spare_ = true;
    return r * std::cos(2.0 * kPi * u2);
  }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

double bump(double h, double center, double width) {
  const double d = (h - center) / width;
  return std::exp(-0.5 * d * d);
}

}  // namespace

TimeSeriesDataset synth_generate(std::uint64_t seed, int days, int steps, const SynthOptions& options) {
  if (days < 1 || steps < 1) throw Error(ErrorCode::kInvalidArgument, "synthetic data needs days, steps >= 1");
  Rng rng(seed);
  TimeSeriesDataset ds;
  ds.days = days;
  ds.steps = steps;
  ds.source = "synthetic:seed=" + std::to_string(seed);
  ds.values.assign(static_cast<std::size_t>(days) * ds.day_length(), 0.0);

  const double span = options.demand_max_kw - options.demand_min_kw;
  double cloud_state = 0.0;
  double wind_state = 0.0;
  double demand_state = 0.0;
  for (int d = 0; d < days; ++d) {
    const double doy = 365.0 * d / days;
    const double season = std::cos(2.0 * kPi * (doy - 172.0) / 365.0);  // +1 at midsummer
    cloud_state = 0.6 * cloud_state + 0.8 * rng.normal();
    wind_state = 0.7 * wind_state + 0.7 * rng.normal();
    demand_state = 0.5 * demand_state + 0.85 * rng.normal();
    const double clearness = std::clamp(0.72 + 0.22 * std::tanh(0.8 * cloud_state), 0.15, 1.0);
    const double peak_ghi = 0.95 + 0.2 * season;
    const double day_length_h = 12.2 + 1.6 * season;
    const double sunrise = 13.0 - 0.5 * day_length_h;
    const double wind_mean = std::max(0.5, 5.5 + 0.8 * season + 2.2 * wind_state);
    const double wind_trend = 0.35 * rng.normal();
    const double demand_level = 0.62 + 0.05 * season + 0.05 * demand_state;
    ds.dates.push_back("day" + std::to_string(d + 1));

    for (int t = 0; t < steps; ++t) {
      const double h = (t + 0.5) * 24.0 / steps;
      const double x = (h - sunrise) / day_length_h;
      double ghi = 0.0;
      if (x > 0.0 && x < 1.0) {
        ghi = peak_ghi * clearness * std::sin(kPi * x) * (1.0 + 0.03 * rng.normal());
        ghi = std::max(ghi, 0.0);
      }
      const double diurnal = 1.0 + 0.12 * std::sin(2.0 * kPi * (h - 9.0) / 24.0);
      const double v10 = std::max(0.0, wind_mean * diurnal * (1.0 + wind_trend * (h - 12.0) / 12.0) *
                                           (1.0 + 0.03 * rng.normal()));
      const double shape = 0.55 + 0.3 * bump(h, 10.0, 2.5) + 0.45 * bump(h, 20.5, 2.0);
      double demand = options.demand_min_kw + span * demand_level * shape * (1.0 + 0.01 * rng.normal());
      demand = std::clamp(demand, options.demand_min_kw, options.demand_max_kw);

      ds.at(d, kSolar, t) = models::solar_capacity_factor(ghi, options.physics);
      ds.at(d, kWind, t) = models::wind_capacity_factor(v10, options.physics);
      ds.at(d, kDemand, t) = demand;
    }
  }
  ds.validate();
  return ds;
}

}  // namespace resd::ts
