#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "rcohull/envelope.hpp"
#include "rcohull/hull.hpp"
#include "rcohull/mat2.hpp"

namespace rcohull {

/// Which singular axis the interior split moves, in diagonal coordinates.
/// The direction is -e_k (x) e_k, i.e. it shrinks the chosen entry.
enum class InteriorAxis { Largest, Smallest };

struct LaminateConfig {
  double margin_tol = kDefaultMarginTol;
  double leaf_tol = 1e-7;
  double bisection_tol = 1e-12;
  int max_bisection_iter = 200;
  int max_depth = 16;
  InteriorAxis interior_axis = InteriorAxis::Largest;
};

/// One node of a laminate. Splits satisfy
///   matrix = weight * minus.matrix + (1 - weight) * plus.matrix
/// with minus.matrix - plus.matrix of rank one; leaves carry the K point
/// whose orbit they lie on.
struct LaminateNode {
  Mat2 matrix;
  double weight = 0.0;
  int minus = -1;
  int plus = -1;
  KPoint matched;

  bool is_leaf() const { return minus < 0; }
};

/// Binary laminate stored as a flat node array; node 0 is the root.
class LaminateTree {
 public:
  static LaminateTree leaf(const Mat2& matrix, const KPoint& matched);
  static LaminateTree split(const Mat2& matrix, double weight, LaminateTree minus,
                            LaminateTree plus);

  const LaminateNode& root() const { return nodes_.front(); }
  const LaminateNode& node(std::size_t i) const { return nodes_[i]; }
  LaminateNode& node(std::size_t i) { return nodes_[i]; }
  std::size_t size() const { return nodes_.size(); }
  std::size_t leaf_count() const;
  /// Number of edges on the longest root-to-leaf path.
  int depth() const;

  LaminateTree subtree(std::size_t i) const;

 private:
  std::vector<LaminateNode> nodes_;
};

enum class ReductionTag { ThetaZero, ThetaInterior, ThetaMax };

std::string_view to_string(ReductionTag tag);

/// Active part of K at a boundary point. For ThetaInterior with two points,
/// active[0] carries the larger slope b - a.
struct ReductionCase {
  ReductionTag tag = ReductionTag::ThetaZero;
  double theta_bar = 0.0;
  Subdiff subdiff;
  std::vector<KPoint> active;
};

/// Picks the one or two points of K whose hull already contains a boundary
/// point: the envelope pieces on either side of the tight theta.
ReductionCase reduce_boundary(const Mat2& xi, const Hull& hull);

/// Builds a laminate rooted at xi with leaves in E. Throws OutsideHull,
/// DepthExceeded, RootBracketFailure or BracketFailure.
LaminateTree decompose(const Mat2& xi, const Hull& hull, const LaminateConfig& cfg = {});

/// Laminate for K = {p}: the hull is lam2 <= b, lam1 lam2 <= ab.
LaminateTree one_point_decompose(const Mat2& xi, const KPoint& p,
                                 const LaminateConfig& cfg = {});

/// Laminate for a two-point K. After relabeling the points must satisfy
/// a1 < a2, a1 b1 <= a2 b2, b2 <= b1 (HypothesesViolated otherwise); the hull
/// is then lam2 <= b1, lam1 lam2 <= a2 b2 and
/// lam1 lam2 + t (lam2 - lam1) <= a1 b1 + t (b1 - a1) with t = two_point_theta.
LaminateTree two_point_decompose(const Mat2& xi, const KPoint& p1, const KPoint& p2,
                                 const LaminateConfig& cfg = {});

/// (a2 b2 - a1 b1) / (b1 - a1 - b2 + a2).
double two_point_theta(const KPoint& p1, const KPoint& p2);

struct VerifyTolerances {
  double root = 1e-9;
  double barycenter = 1e-9;
  double rank_one = 1e-9;
  double leaf = 1e-7;
};

struct VerifyReport {
  bool passed = true;
  double root_error = 0.0;
  double worst_barycenter = 0.0;
  double worst_rank_one_defect = 0.0;
  double worst_leaf_distance = 0.0;
  std::size_t bad_weights = 0;
  std::size_t unknown_points = 0;
  std::size_t nodes = 0;
  std::size_t leaves = 0;
  int depth = 0;
  std::vector<std::string> problems;
};

/// Rechecks a certificate from scratch: the root equals xi, every split is a
/// rank-one convex combination, and every leaf lies on the orbit of a K point.
VerifyReport verify(const LaminateTree& tree, const Mat2& xi, const KSet& k,
                    const VerifyTolerances& tol = {});

/// Nested JSON with 17 significant digits; parse_certificate inverts it
/// bit for bit.
std::string to_certificate(const LaminateTree& tree);
LaminateTree parse_certificate(std::string_view text);

}  // namespace rcohull
