#pragma once

#include <cstdint>

#include "resd/timeseries/dataset.hpp"

namespace resd::ts {

struct SynthOptions {
  double demand_min_kw = 200.0;
  double demand_max_kw = 44800.0;
  models::TechnicalParams physics;
};

// Seeded stand-in for historical data: irradiance and 10 m wind speed with a
// seasonal envelope, weather regimes and noise, passed through the physics,
// and a two-peak demand profile clamped to [demand_min, demand_max].
TimeSeriesDataset synth_generate(std::uint64_t seed, int days, int steps, const SynthOptions& options = {});

}  // namespace resd::ts
