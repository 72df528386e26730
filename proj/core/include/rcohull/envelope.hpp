#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace rcohull {

/// A singular-value pair (a, b) of the target set, 0 < a <= b.
struct KPoint {
  double a = 0.0;
  double b = 0.0;

  double product() const { return a * b; }
  double slope() const { return b - a; }
  friend auto operator<=>(const KPoint&, const KPoint&) = default;
};

/// Validated finite set K: nonempty, every point satisfies 0 < a <= b,
/// sorted lexicographically with duplicates removed.
class KSet {
 public:
  static KSet validate(std::span<const KPoint> raw);

  std::span<const KPoint> points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  const KPoint& operator[](std::size_t i) const { return points_[i]; }
  double a_min() const { return a_min_; }
  double b_max() const { return b_max_; }
  double max_product() const { return max_product_; }

 private:
  std::vector<KPoint> points_;
  double a_min_ = 0.0;
  double b_max_ = 0.0;
  double max_product_ = 0.0;
};

/// Throws EmptyK, NonFinite or PointOutsideT.
KSet validate_kset(std::span<const KPoint> raw);

inline constexpr std::size_t kNoSource = std::numeric_limits<std::size_t>::max();

/// intercept + slope * theta. `source` indexes the KSet point that produced
/// the line, or kNoSource for the synthetic branches of the extension.
struct Line {
  double slope = 0.0;
  double intercept = 0.0;
  std::size_t source = kNoSource;

  double at(double theta) const { return intercept + slope * theta; }
};

/// Closed interval of slopes [lo, hi].
struct Subdiff {
  double lo = 0.0;
  double hi = 0.0;
};

/// Piecewise-linear convex function. pieces()[i] is active on
/// [breakpoints()[i-1], breakpoints()[i]] (with lo()/hi() closing the ends);
/// slopes are strictly increasing. With a quadratic tail the function equals
/// theta^2 for theta > tail_start() and the last piece is the tangent there.
class PLConvex {
 public:
  PLConvex(std::vector<Line> pieces, std::vector<double> breakpoints, double lo, double hi,
           std::optional<double> tail_start = std::nullopt);

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  std::span<const Line> pieces() const { return pieces_; }
  std::span<const double> breakpoints() const { return breaks_; }
  std::optional<double> tail_start() const { return tail_start_; }

  std::size_t piece_index(double theta) const;
  double operator()(double theta) const;
  /// Finite domain ends plus all breakpoints, ascending.
  std::vector<double> candidates() const;

 private:
  std::vector<Line> pieces_;
  std::vector<double> breaks_;
  double lo_;
  double hi_;
  std::optional<double> tail_start_;
};

/// m(theta) = max over K of ab + theta (b - a), on [0, b_max].
PLConvex m_envelope(const KSet& k);

/// Convex extension of m to the real line: max ab for theta <= 0, m on
/// [0, b_max], theta^2 beyond b_max.
PLConvex extend_F(const PLConvex& env, const KSet& k);

/// [left slope, right slope] at theta. At a finite end of the domain the
/// one-sided slope is returned for both ends.
Subdiff subdifferential(const PLConvex& f, double theta);

/// sigma(x) = min over theta in [0, b_max] of (theta x + m(theta)) / (x + theta),
/// evaluated exactly at the breakpoints of m. Throws NegativeX for x < 0.
double sigma(const PLConvex& env, double x);

/// sigma written as min{ product / x, cap, (theta x + c) / (x + theta) ... }
/// for the cardinalities where a closed form is known.
struct ClosedFormSigma {
  struct Tangent {
    double theta;
    double value;  // a_j b_j + theta (b_j - a_j)
  };
  double product = 0.0;
  double cap = 0.0;
  std::vector<Tangent> tangents;
  /// Two-point case number (1, 2 or 3) after relabeling so that a1 >= a2;
  /// zero when K has one or three points.
  int two_point_case = 0;

  double operator()(double x) const;
};

/// Closed forms for |K| = 1, 2, 3. Throws UnsupportedCardinality for |K| > 3
/// and NotApplicable when a three-point K violates the ordering hypotheses.
ClosedFormSigma sigma_closed_form(const KSet& k);

/// theta(i, j) = (a_i b_i - a_j b_j) / (b_j - a_j - (b_i - a_i)).
double crossing_theta(const KPoint& pi, const KPoint& pj);

}  // namespace rcohull
