#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace spillover {

enum class ErrorCode {
  // configuration
  ConfigError,
  // data
  MissingFile,
  MalformedHeader,
  UnparseableCell,
  NonPositivePrice,
  DuplicateDate,
  DuplicateSeriesName,
  EmptyIntersection,
  TooFewObservations,
  DegenerateSeries,
  InsufficientData,
  IndexOutOfRange,
  UnknownBand,
  InvalidPartition,
  DftTooSmall,
  NoEdges,
  // numerical
  SingularRegression,
  SingularDesign,
  UnstableModel,
  NonPositiveDefiniteCovariance,
  NumericalBreakdown,
  ZeroVariance,
  NonConvergence,
};

/// Coarse failure class; maps onto the CLI exit codes (1, 2, 3).
enum class ErrorKind { Config = 1, Data = 2, Numerical = 3 };

std::string_view to_string(ErrorCode code);
ErrorKind kind_of(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  ErrorKind kind() const noexcept { return kind_of(code_); }

  /// Same error, message prefixed with the pipeline stage that raised it.
  Error in_stage(std::string_view stage) const;

 private:
  Error(ErrorCode code, std::string full, int) : std::runtime_error(std::move(full)), code_(code) {}
  ErrorCode code_;
};

}  // namespace spillover
