#pragma once

#include <string>
#include <vector>

#include "resd/models/physics.hpp"

namespace resd::ts {

enum Quantity : int { kSolar = 0, kWind = 1, kDemand = 2 };
inline constexpr int kNumQuantities = 3;

// Day-major tensor: values[(d * Q + q) * T + t]. A day vector is the
// concatenation of its quantity blocks (solar, wind, demand).
struct TimeSeriesDataset {
  int days = 0;
  int steps = 0;
  std::vector<std::string> quantities{"solar_cf", "wind_cf", "demand_kw"};
  std::vector<std::string> units{"1", "1", "kW"};
  std::vector<double> values;
  std::vector<std::string> dates;
  std::string source;

  int num_quantities() const { return static_cast<int>(quantities.size()); }
  int day_length() const { return steps * num_quantities(); }
  double at(int d, int q, int t) const { return values[(static_cast<std::size_t>(d) * num_quantities() + q) * steps + t]; }
  double& at(int d, int q, int t) { return values[(static_cast<std::size_t>(d) * num_quantities() + q) * steps + t]; }
  std::vector<double> day_vector(int d) const;

  // Shape, capacity factors in [0, 1], demand >= 0, finite values.
  void validate() const;
};

struct IngestOptions {
  int steps = 0;  // 0 infers max(hour) + 1
  models::TechnicalParams physics;
};

// CSV with header date,hour,ghi_kw_m2,wind_speed_10m_ms,demand_kw. Days keep
// their order of first appearance. Throws SchemaError, GapError, RangeError.
TimeSeriesDataset ingest_csv(const std::string& path, const IngestOptions& options = {});
TimeSeriesDataset parse_csv(const std::string& text, const IngestOptions& options = {},
                            const std::string& source = "<memory>");

}  // namespace resd::ts
