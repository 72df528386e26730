#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rcohull/envelope.hpp"
#include "rcohull/hull.hpp"
#include "rcohull/mat2.hpp"

namespace rcohull {

/// E_delta: every K point moved to (a - delta, b - delta).
struct DeltaFamily {
  KSet base;
  double delta = 0.0;
  KSet shifted;
};

/// Needs 0 <= delta <= min a / 2. Throws InvalidDelta (negative or
/// non-finite) or DeltaTooLarge.
DeltaFamily make_delta_family(const KSet& k, double delta);

struct ConditionReport {
  int condition = 0;
  std::size_t samples = 0;
  std::vector<std::string> failures;
  /// Smallest base-hull margin seen (condition 1 and 3).
  double worst_margin = 0.0;
  /// sqrt(2) delta for condition 2.
  double bound = 0.0;
  std::optional<double> delta_star;
  double max_distance = 0.0;
  bool tight = false;
  bool passed = false;
};

/// Samples of Rco E_delta, a quarter of them taken on E_delta itself, must
/// all be interior points of Rco E.
ConditionReport check_condition1(const DeltaFamily& fam, std::size_t samples, std::uint64_t seed,
                                 double tol = kDefaultMarginTol);

/// Rotated copies of E_delta points lie within sqrt(2) delta of E. The bound
/// is reported as tight when some sample reaches it within 1e-6; a one-point
/// K must be tight to pass.
ConditionReport check_condition2(const DeltaFamily& fam, std::size_t samples, std::uint64_t seed);

/// 0.5, 0.25, 0.1, 0.01 and then powers of ten down to 1e-12.
std::vector<double> default_delta_grid();

/// Largest grid delta such that eta lies in Rco E_delta for every grid value
/// up to it. Grid values above min a / 2 are ignored. Throws NotInterior when
/// eta is not an interior point of Rco E.
ConditionReport check_condition3(const KSet& k, const Mat2& eta, std::span<const double> grid,
                                 double tol = kDefaultMarginTol);

/// check_condition3 over random interior samples; delta_star is the smallest
/// one found.
ConditionReport check_condition3_sampled(const KSet& k, std::size_t samples, std::uint64_t seed,
                                         std::span<const double> grid,
                                         double tol = kDefaultMarginTol);

std::string to_json(const ConditionReport& r);

enum class SolvabilityReason { GradientInE, GradientInInterior, GradientOutside, GradientOnBoundaryOnly };

std::string_view to_string(SolvabilityReason r);

struct SolvabilityVerdict {
  bool solvable = false;
  SolvabilityReason reason = SolvabilityReason::GradientOutside;
};

/// The boundary-value problem with affine data of this gradient is solvable
/// when the gradient lies in E or in the interior of Rco E.
SolvabilityVerdict check_solvable(const Mat2& grad_phi, const Hull& hull,
                                  double tol = kDefaultMarginTol);

}  // namespace rcohull
