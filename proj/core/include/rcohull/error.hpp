#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rcohull {

enum class ErrorCode {
  NonFinite,
  EmptyK,
  PointOutsideT,
  NegativeX,
  UnsupportedCardinality,
  NotApplicable,
  ZeroSingularValue,
  InvalidTheta,
  OutsideHull,
  DepthExceeded,
  RootBracketFailure,
  BracketFailure,
  HypothesesViolated,
  NoActivePoint,
  DeltaTooLarge,
  InvalidDelta,
  NotInterior,
  ParseError,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

/// Exception carrying a machine-readable code; every library failure is
/// reported through it.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace rcohull
