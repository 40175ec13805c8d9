#include "spillover/error.hpp"

namespace spillover {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::MissingFile: return "MissingFile";
    case ErrorCode::MalformedHeader: return "MalformedHeader";
    case ErrorCode::UnparseableCell: return "UnparseableCell";
    case ErrorCode::NonPositivePrice: return "NonPositivePrice";
    case ErrorCode::DuplicateDate: return "DuplicateDate";
    case ErrorCode::DuplicateSeriesName: return "DuplicateSeriesName";
    case ErrorCode::EmptyIntersection: return "EmptyIntersection";
    case ErrorCode::TooFewObservations: return "TooFewObservations";
    case ErrorCode::DegenerateSeries: return "DegenerateSeries";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::UnknownBand: return "UnknownBand";
    case ErrorCode::InvalidPartition: return "InvalidPartition";
    case ErrorCode::DftTooSmall: return "DftTooSmall";
    case ErrorCode::NoEdges: return "NoEdges";
    case ErrorCode::SingularRegression: return "SingularRegression";
    case ErrorCode::SingularDesign: return "SingularDesign";
    case ErrorCode::UnstableModel: return "UnstableModel";
    case ErrorCode::NonPositiveDefiniteCovariance: return "NonPositiveDefiniteCovariance";
    case ErrorCode::NumericalBreakdown: return "NumericalBreakdown";
    case ErrorCode::ZeroVariance: return "ZeroVariance";
    case ErrorCode::NonConvergence: return "NonConvergence";
  }
  return "Unknown";
}

ErrorKind kind_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::ConfigError:
      return ErrorKind::Config;
    case ErrorCode::SingularRegression:
    case ErrorCode::SingularDesign:
    case ErrorCode::UnstableModel:
    case ErrorCode::NonPositiveDefiniteCovariance:
    case ErrorCode::NumericalBreakdown:
    case ErrorCode::ZeroVariance:
    case ErrorCode::NonConvergence:
      return ErrorKind::Numerical;
    default:
      return ErrorKind::Data;
  }
}

Error Error::in_stage(std::string_view stage) const {
  return Error(code_, std::string("[") + std::string(stage) + "] " + what(), 0);
}

}  // namespace spillover
