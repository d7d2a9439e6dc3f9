#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "resd/cli/config.hpp"
#include "resd/errors.hpp"

namespace resd::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitUsage = 2,
  kExitIterationLimit = 3,
  kExitTimeLimit = 4,
  kExitInfeasible = 5,
};

enum class LogLevel { kQuiet, kInfo, kDebug };

// RESD_LOG=quiet|info|debug, info when unset or unrecognized.
LogLevel log_level_from_env();

struct Console {
  std::ostream& out;
  std::ostream& err;
  LogLevel level = LogLevel::kInfo;

  void info(const std::string& line) const;
  void debug(const std::string& line) const;
};

int exit_code_for(ErrorCode code);

// Writes to a sibling temporary file and renames it over `path`.
void write_atomic(const std::string& path, const std::string& content);

// Lapalma day data at the given resolution from the configured source.
ts::TimeSeriesDataset load_dataset(const RunConfig& cfg, int steps);

struct SweepRow {
  int n_dim = 0;
  int steps = 0;
  double tac = 0.0;
  double invest = 0.0;
  double opex = 0.0;
  double max_gap = 0.0;
  double evr = 0.0;
  double cpu_s = 0.0;
  int iters = 0;
  std::uint64_t seed = 0;
};

std::string sweep_csv(const std::vector<SweepRow>& rows);

int cmd_preprocess(const RunConfig& cfg, const Console& con);
int cmd_solve(const RunConfig& cfg, const Console& con);
int cmd_evaluate(const RunConfig& cfg, const Console& con);
int cmd_sweep(const RunConfig& cfg, const Console& con);

// Full command line: `resd <command> --config FILE [options]`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace resd::cli
