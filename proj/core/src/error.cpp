#include "rcohull/error.hpp"

namespace rcohull {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::EmptyK: return "EmptyK";
    case ErrorCode::PointOutsideT: return "PointOutsideT";
    case ErrorCode::NegativeX: return "NegativeX";
    case ErrorCode::UnsupportedCardinality: return "UnsupportedCardinality";
    case ErrorCode::NotApplicable: return "NotApplicable";
    case ErrorCode::ZeroSingularValue: return "ZeroSingularValue";
    case ErrorCode::InvalidTheta: return "InvalidTheta";
    case ErrorCode::OutsideHull: return "OutsideHull";
    case ErrorCode::DepthExceeded: return "DepthExceeded";
    case ErrorCode::RootBracketFailure: return "RootBracketFailure";
    case ErrorCode::BracketFailure: return "BracketFailure";
    case ErrorCode::HypothesesViolated: return "HypothesesViolated";
    case ErrorCode::NoActivePoint: return "NoActivePoint";
    case ErrorCode::DeltaTooLarge: return "DeltaTooLarge";
    case ErrorCode::InvalidDelta: return "InvalidDelta";
    case ErrorCode::NotInterior: return "NotInterior";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace rcohull
