#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace resd {

enum class ErrorCode {
  kInvalidArgument,
  kDimensionMismatch,
  kInvalidBounds,
  kTooLarge,
  kNotOptimal,
  kSchemaError,
  kGapError,
  kRangeError,
  kConstantSeries,
  kMissingYear,
  kNegativeIrradiance,
  kInfeasibleDesignSpace,
  kLlpInfeasible,
  kNonlinearLowerLevel,
  kInternal,
};

std::string_view error_code_name(ErrorCode code);

// Single exception type for precondition and consistency failures. Solver
// outcomes (infeasible, iteration limits) are reported through status fields.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace resd
