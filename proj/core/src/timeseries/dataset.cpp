#include "resd/timeseries/dataset.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "resd/errors.hpp"

namespace resd::ts {
namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) {
    const auto b = field.find_first_not_of(" \t");
    const auto e = field.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_number(const std::string& s, int line_no, const char* column) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size() || !std::isfinite(v)) {
    throw Error(ErrorCode::kSchemaError,
                "line " + std::to_string(line_no) + ": column " + column + " is not a number: '" + s + "'");
  }
  return v;
}

struct RawRow {
  int line;
  double ghi;
  double wind;
  double demand;
};

}  // namespace

std::vector<double> TimeSeriesDataset::day_vector(int d) const {
  const auto len = static_cast<std::size_t>(day_length());
  const auto begin = values.begin() + static_cast<std::ptrdiff_t>(d * len);
  return {begin, begin + static_cast<std::ptrdiff_t>(len)};
}

void TimeSeriesDataset::validate() const {
  if (days < 0 || steps <= 0) throw Error(ErrorCode::kSchemaError, "dataset needs steps > 0");
  if (units.size() != quantities.size() ||
      values.size() != static_cast<std::size_t>(days) * static_cast<std::size_t>(day_length())) {
    throw Error(ErrorCode::kDimensionMismatch, "dataset tensor does not match D x Q x T");
  }
  for (int d = 0; d < days; ++d) {
    for (int q = 0; q < num_quantities(); ++q) {
      for (int t = 0; t < steps; ++t) {
        const double v = at(d, q, t);
        if (!std::isfinite(v)) throw Error(ErrorCode::kRangeError, "non-finite value on day " + std::to_string(d + 1));
        const bool cf = q == kSolar || q == kWind;
        if ((cf && (v < 0.0 || v > 1.0)) || (!cf && v < 0.0)) {
          throw Error(ErrorCode::kRangeError, quantities[q] + " out of range on day " + std::to_string(d + 1) +
                                                  ", step " + std::to_string(t));
        }
      }
    }
  }
}

TimeSeriesDataset parse_csv(const std::string& text, const IngestOptions& options, const std::string& source) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  if (!std::getline(in, line)) throw Error(ErrorCode::kSchemaError, "empty input");
  ++line_no;
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
  const std::vector<std::string> expected{"date", "hour", "ghi_kw_m2", "wind_speed_10m_ms", "demand_kw"};
  if (split_fields(line) != expected) {
    throw Error(ErrorCode::kSchemaError, "header must be date,hour,ghi_kw_m2,wind_speed_10m_ms,demand_kw");
  }

  std::vector<std::string> order;
  std::map<std::string, std::map<int, RawRow>> by_date;
  int max_hour = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto f = split_fields(line);
    if (f.size() != expected.size()) {
      throw Error(ErrorCode::kSchemaError, "line " + std::to_string(line_no) + ": expected 5 columns");
    }
    const double hour_value = parse_number(f[1], line_no, "hour");
    if (hour_value < 0.0 || hour_value != std::floor(hour_value)) {
      throw Error(ErrorCode::kSchemaError, "line " + std::to_string(line_no) + ": hour must be a nonnegative integer");
    }
    const int hour = static_cast<int>(hour_value);
    RawRow row{line_no, parse_number(f[2], line_no, "ghi_kw_m2"), parse_number(f[3], line_no, "wind_speed_10m_ms"),
               parse_number(f[4], line_no, "demand_kw")};
    if (row.ghi < 0.0) {
      throw Error(ErrorCode::kRangeError, "line " + std::to_string(line_no) + ": negative irradiance");
    }
    if (row.wind < 0.0) {
      throw Error(ErrorCode::kRangeError, "line " + std::to_string(line_no) + ": negative wind speed");
    }
    if (row.demand < 0.0) {
      throw Error(ErrorCode::kRangeError, "line " + std::to_string(line_no) + ": negative demand");
    }
    if (f[0].empty()) throw Error(ErrorCode::kSchemaError, "line " + std::to_string(line_no) + ": empty date");
    auto [it, inserted] = by_date.try_emplace(f[0]);
    if (inserted) order.push_back(f[0]);
    if (!it->second.emplace(hour, row).second) {
      throw Error(ErrorCode::kSchemaError, "line " + std::to_string(line_no) + ": duplicate hour for " + f[0]);
    }
    max_hour = std::max(max_hour, hour);
  }
  const int steps = options.steps > 0 ? options.steps : max_hour + 1;
  if (steps <= 0) throw Error(ErrorCode::kSchemaError, "no data rows");

  TimeSeriesDataset ds;
  ds.days = static_cast<int>(order.size());
  ds.steps = steps;
  ds.source = source;
  ds.dates = order;
  ds.values.assign(static_cast<std::size_t>(ds.days) * ds.day_length(), 0.0);
  for (int d = 0; d < ds.days; ++d) {
    const auto& hours = by_date[order[d]];
    for (int t = 0; t < steps; ++t) {
      const auto it = hours.find(t);
      if (it == hours.end()) {
        throw Error(ErrorCode::kGapError, "day " + std::to_string(d + 1) + " (" + order[d] + ") is missing hour " +
                                              std::to_string(t));
      }
      const RawRow& r = it->second;
      ds.at(d, kSolar, t) = models::solar_capacity_factor(r.ghi, options.physics);
      ds.at(d, kWind, t) = models::wind_capacity_factor(r.wind, options.physics);
      ds.at(d, kDemand, t) = r.demand;
    }
    if (static_cast<int>(hours.size()) > steps) {
      throw Error(ErrorCode::kSchemaError, "day " + std::to_string(d + 1) + " has hours beyond " +
                                               std::to_string(steps - 1) + " (line " +
                                               std::to_string(hours.rbegin()->second.line) + ")");
    }
  }
  ds.validate();
  return ds;
}

TimeSeriesDataset ingest_csv(const std::string& path, const IngestOptions& options) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorCode::kSchemaError, "cannot open " + path);
  std::ostringstream buf;
  buf << file.rdbuf();
  return parse_csv(buf.str(), options, path);
}

}  // namespace resd::ts
