#pragma once

#include <optional>
#include <string_view>

#include "rcohull/envelope.hpp"
#include "rcohull/mat2.hpp"

namespace rcohull {

inline constexpr double kDefaultMarginTol = 1e-9;

/// Precomputed envelope for repeated queries against one K.
class Hull {
 public:
  explicit Hull(KSet k);

  const KSet& kset() const { return k_; }
  const PLConvex& envelope() const { return env_; }

 private:
  KSet k_;
  PLConvex env_;
};

struct Margin {
  /// min over theta in [0, b_max] of m(theta) - (lam1 lam2 + theta (lam2 - lam1)).
  double value = 0.0;
  /// Smallest candidate theta attaining the minimum.
  double argmin_theta = 0.0;
  /// Number of candidates within round-off of the minimum.
  int ties = 1;
};

Margin hull_margin(const SVPair& sv, const Hull& hull);
Margin hull_margin(const Mat2& xi, const Hull& hull);

enum class HullClass { InE, InteriorHull, BoundaryHull, Outside };

std::string_view to_string(HullClass c);

struct Classification {
  HullClass tag = HullClass::Outside;
  std::optional<double> tight_theta;
  double margin = 0.0;
  int ties = 1;
};

/// InE when the singular values are within tol of K; otherwise the sign of
/// the margin decides, with |margin| <= tol counted as boundary.
Classification classify(const Mat2& xi, const Hull& hull, double tol = kDefaultMarginTol);
Classification classify(const SVPair& sv, const Hull& hull, double tol = kDefaultMarginTol);

/// max{lam1 lam2 + theta (lam2 - lam1) - theta^2, 0}.
double h_theta(const Mat2& xi, double theta);

/// Euclidean distance in the singular-value plane to the nearest K point.
double sv_distance_to_E(const SVPair& sv, const KSet& k);
double sv_distance_to_E(const Mat2& xi, const KSet& k);

/// Index of the K point nearest to sv (first on ties).
std::size_t nearest_point(const SVPair& sv, const KSet& k);

}  // namespace rcohull
