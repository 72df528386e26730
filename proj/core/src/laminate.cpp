#include "rcohull/laminate.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "rcohull/error.hpp"

namespace rcohull {

LaminateTree LaminateTree::leaf(const Mat2& matrix, const KPoint& matched) {
  LaminateTree t;
  LaminateNode n;
  n.matrix = matrix;
  n.matched = matched;
  t.nodes_.push_back(n);
  return t;
}

LaminateTree LaminateTree::split(const Mat2& matrix, double weight, LaminateTree minus,
                                 LaminateTree plus) {
  LaminateTree t;
  t.nodes_.reserve(1 + minus.size() + plus.size());
  LaminateNode root;
  root.matrix = matrix;
  root.weight = weight;
  root.minus = 1;
  root.plus = static_cast<int>(1 + minus.size());
  t.nodes_.push_back(root);
  for (LaminateTree* sub : {&minus, &plus}) {
    const int offset = static_cast<int>(t.nodes_.size());
    for (LaminateNode n : sub->nodes_) {
      if (!n.is_leaf()) {
        n.minus += offset;
        n.plus += offset;
      }
      t.nodes_.push_back(n);
    }
  }
  return t;
}

std::size_t LaminateTree::leaf_count() const {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [](const LaminateNode& n) { return n.is_leaf(); }));
}

int LaminateTree::depth() const {
  // Children always come after their parent in the array.
  std::vector<int> d(nodes_.size(), 0);
  int best = 0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const LaminateNode& n = nodes_[i];
    best = std::max(best, d[i]);
    if (!n.is_leaf()) {
      d[static_cast<std::size_t>(n.minus)] = d[i] + 1;
      d[static_cast<std::size_t>(n.plus)] = d[i] + 1;
    }
  }
  return best;
}

LaminateTree LaminateTree::subtree(std::size_t i) const {
  const LaminateNode& n = nodes_[i];
  if (n.is_leaf()) return leaf(n.matrix, n.matched);
  return split(n.matrix, n.weight, subtree(static_cast<std::size_t>(n.minus)),
               subtree(static_cast<std::size_t>(n.plus)));
}

std::string_view to_string(ReductionTag tag) {
  switch (tag) {
    case ReductionTag::ThetaZero: return "ThetaZero";
    case ReductionTag::ThetaInterior: return "ThetaInterior";
    case ReductionTag::ThetaMax: return "ThetaMax";
  }
  return "unknown";
}

double two_point_theta(const KPoint& p1, const KPoint& p2) {
  return (p2.product() - p1.product()) / (p1.slope() - p2.slope());
}

ReductionCase reduce_boundary(const Mat2& xi, const Hull& hull) {
  const Margin margin = hull_margin(xi, hull);
  const PLConvex& env = hull.envelope();
  const KSet& k = hull.kset();
  const auto pieces = env.pieces();
  const auto breaks = env.breakpoints();

  ReductionCase rc;
  rc.theta_bar = margin.argmin_theta;
  rc.subdiff = subdifferential(extend_F(env, k), rc.theta_bar);

  auto point_of = [&](const Line& l) {
    if (l.source >= k.size()) throw Error(ErrorCode::NoActivePoint, "envelope piece without a K point");
    return k[l.source];
  };

  // The active lines with extreme slopes at theta_bar are exactly the
  // envelope pieces meeting there.
  if (rc.theta_bar <= env.lo()) {
    rc.tag = ReductionTag::ThetaZero;
    rc.active = {point_of(pieces.front())};
  } else if (rc.theta_bar >= env.hi()) {
    rc.tag = ReductionTag::ThetaMax;
    rc.active = {point_of(pieces.back())};
  } else {
    const auto it = std::find(breaks.begin(), breaks.end(), rc.theta_bar);
    if (it == breaks.end()) {
      throw Error(ErrorCode::NoActivePoint, "tight theta is not a breakpoint of m");
    }
    const auto j = static_cast<std::size_t>(it - breaks.begin());
    rc.tag = ReductionTag::ThetaInterior;
    rc.active = {point_of(pieces[j + 1]), point_of(pieces[j])};
  }
  return rc;
}

namespace {

double near_scale(double v) { return std::max(1.0, std::abs(v)); }

struct TwoPoint {
  KPoint p1;  // smaller a, larger b
  KPoint p2;
  double theta = 0.0;
};

TwoPoint label_two_point(KPoint p, KPoint q) {
  if (q.a < p.a) std::swap(p, q);
  if (!(p.a < q.a && p.product() <= q.product() && q.b <= p.b)) {
    throw Error(ErrorCode::HypothesesViolated,
                "two-point laminate needs a1 < a2, a1 b1 <= a2 b2, b2 <= b1");
  }
  return {p, q, two_point_theta(p, q)};
}

// Slacks of lam2 <= b1, lam1 lam2 <= a2 b2 and the tangent constraint at theta.
struct TwoSlack {
  double c7, c8, c9;
  double min() const { return std::min({c7, c8, c9}); }
};

TwoSlack two_slacks(const TwoPoint& tp, const SVPair& sv) {
  const double det = sv.product();
  return {tp.p1.b - sv.lam2, tp.p2.product() - det,
          tp.p1.product() + tp.theta * tp.p1.slope() - det - tp.theta * sv.gap()};
}

double one_slack(const KPoint& p, const SVPair& sv) {
  return std::min(p.b - sv.lam2, p.product() - sv.product());
}

class Decomposer {
 public:
  explicit Decomposer(const LaminateConfig& cfg) : cfg_(cfg) {}

  LaminateTree general(const Mat2& m, const Hull& hull, int depth) const {
    const SVPair sv = singular_values(m);
    const KSet& k = hull.kset();
    const std::size_t near = nearest_point(sv, k);
    if (std::hypot(sv.lam1 - k[near].a, sv.lam2 - k[near].b) <= cfg_.leaf_tol) {
      return LaminateTree::leaf(m, k[near]);
    }
    const Margin margin = hull_margin(sv, hull);
    if (margin.value < -cfg_.margin_tol) {
      throw Error(ErrorCode::OutsideHull, "matrix lies outside the rank-one convex hull");
    }
    if (margin.value > cfg_.margin_tol) {
      return interior_split(
          m, k.b_max(), [&](const SVPair& s) { return hull_margin(s, hull).value; },
          [&](const Mat2& child) { return general(child, hull, depth + 1); }, depth);
    }
    const ReductionCase rc = reduce_boundary(m, hull);
    if (rc.active.size() == 1) return one_point(m, rc.active[0], depth);
    return two_point(m, label_two_point(rc.active[0], rc.active[1]), depth);
  }

  LaminateTree one_point(const Mat2& m, const KPoint& p, int depth) const {
    const SVPair sv = singular_values(m);
    if (std::hypot(sv.lam1 - p.a, sv.lam2 - p.b) <= cfg_.leaf_tol) return LaminateTree::leaf(m, p);
    const double cb = p.b - sv.lam2;
    const double cp = p.product() - sv.product();
    if (std::min(cb, cp) < -cfg_.margin_tol) {
      throw Error(ErrorCode::OutsideHull, "matrix lies outside the one-point hull");
    }
    auto recurse = [&](const Mat2& child) { return one_point(child, p, depth + 1); };
    if (cb <= cfg_.margin_tol) return axis_split(m, p.a, recurse, depth);
    if (cp <= cfg_.margin_tol) {
      return det_preserving_split(
          m, p.b, [&](const SVPair& s) { return p.b - s.lam2; }, recurse, depth);
    }
    return interior_split(
        m, p.b, [&](const SVPair& s) { return one_slack(p, s); }, recurse, depth);
  }

  LaminateTree two_point(const Mat2& m, const TwoPoint& tp, int depth) const {
    const SVPair sv = singular_values(m);
    for (const KPoint& p : {tp.p1, tp.p2}) {
      if (std::hypot(sv.lam1 - p.a, sv.lam2 - p.b) <= cfg_.leaf_tol) return LaminateTree::leaf(m, p);
    }
    const TwoSlack c = two_slacks(tp, sv);
    if (c.min() < -cfg_.margin_tol) {
      throw Error(ErrorCode::OutsideHull, "matrix lies outside the two-point hull");
    }
    auto recurse = [&](const Mat2& child) { return two_point(child, tp, depth + 1); };
    if (c.c7 <= cfg_.margin_tol) return axis_split(m, tp.p1.a, recurse, depth);
    if (c.c8 <= cfg_.margin_tol) {
      return det_preserving_split(
          m, tp.p1.b,
          [&](const SVPair& s) {
            const TwoSlack cs = two_slacks(tp, s);
            return std::min(cs.c7, cs.c9);
          },
          recurse, depth);
    }
    if (c.c9 <= cfg_.margin_tol) return third_constraint_split(m, tp, recurse, depth);
    return interior_split(
        m, tp.p1.b, [&](const SVPair& s) { return two_slacks(tp, s).min(); }, recurse, depth);
  }

 private:
  template <class Inside>
  double bisect(Inside inside, double t_in, double t_out) const {
    for (int it = 0; it < cfg_.max_bisection_iter && std::abs(t_out - t_in) > cfg_.bisection_tol;
         ++it) {
      const double mid = 0.5 * (t_in + t_out);
      if (mid == t_in || mid == t_out) break;
      (inside(mid) ? t_in : t_out) = mid;
    }
    return t_in;
  }

  template <class Inside>
  double find_outside(Inside inside, double step) const {
    double t = step;
    for (int i = 0; i < 200; ++i, t *= 2.0) {
      if (!inside(t)) return t;
    }
    throw Error(ErrorCode::BracketFailure, "no exit from the hull along a rank-one line");
  }

  template <class Recurse>
  LaminateTree make_split(const Mat2& m, const Mat2& dir, double t_lo, double t_hi,
                          Recurse recurse, int depth) const {
    if (depth >= cfg_.max_depth) {
      throw Error(ErrorCode::DepthExceeded,
                  "laminate deeper than " + std::to_string(cfg_.max_depth));
    }
    if (!(t_lo < 0.0 && t_hi > 0.0)) {
      throw Error(ErrorCode::RootBracketFailure, "degenerate rank-one split");
    }
    const double w = t_hi / (t_hi - t_lo);
    return LaminateTree::split(m, w, recurse(m + t_lo * dir), recurse(m + t_hi * dir));
  }

  static Mat2 to_original(const IsoFactorization& f, const Mat2& dir) {
    return f.left.transpose() * dir * f.right.transpose();
  }

  // Move along -e_k (x) e_k in diagonal coordinates until the slack vanishes
  // on both sides; |entry| > outer is always outside.
  template <class Slack, class Recurse>
  LaminateTree interior_split(const Mat2& m, double outer, Slack slack, Recurse recurse,
                              int depth) const {
    const IsoFactorization f = isotropic_factorize(m);
    const bool largest = cfg_.interior_axis == InteriorAxis::Largest;
    const double d = largest ? f.sv.lam2 : f.sv.lam1;
    const Mat2 dir = to_original(f, largest ? Mat2::diag(0.0, -1.0) : Mat2::diag(-1.0, 0.0));
    auto inside = [&](double t) { return slack(singular_values(m + t * dir)) >= 0.0; };
    const double out_hi = d + outer + 1.0;
    const double out_lo = d - outer - 1.0;
    if (inside(out_hi) || inside(out_lo)) {
      throw Error(ErrorCode::RootBracketFailure, "interior split bracket does not leave the hull");
    }
    const double t_hi = bisect(inside, 0.0, out_hi);
    const double t_lo = bisect(inside, 0.0, out_lo);
    return make_split(m, dir, t_lo, t_hi, recurse, depth);
  }

  // lam2 is tight: m = w diag(a, lam2) + (1 - w) diag(-a, lam2) in diagonal
  // coordinates.
  template <class Recurse>
  LaminateTree axis_split(const Mat2& m, double a, Recurse recurse, int depth) const {
    const IsoFactorization f = isotropic_factorize(m);
    const Mat2 dir = to_original(f, Mat2::diag(-1.0, 0.0));
    const double x = f.sv.lam1;
    return make_split(m, dir, x - a, x + a, recurse, depth);
  }

  // The product lam1 lam2 is tight: slide along the det-preserving rank-one
  // direction until the remaining slack is used up on both sides.
  template <class Slack, class Recurse>
  LaminateTree det_preserving_split(const Mat2& m, double scale, Slack slack, Recurse recurse,
                                    int depth) const {
    const IsoFactorization f = isotropic_factorize(m);
    const Mat2 dir = to_original(f, det_preserving_direction(f.sv));
    auto inside = [&](double t) { return slack(singular_values(m + t * dir)) >= 0.0; };
    const double step = scale / dir.frobenius();
    const double t_hi = bisect(inside, 0.0, find_outside(inside, step));
    const double t_lo = bisect(inside, 0.0, find_outside(inside, -step));
    return make_split(m, dir, t_lo, t_hi, recurse, depth);
  }

  // The tangent constraint at theta is tight: along A it stays tight, and the
  // two ends land where lam2 = b1 and where lam1 lam2 = a2 b2.
  template <class Recurse>
  LaminateTree third_constraint_split(const Mat2& m, const TwoPoint& tp, Recurse recurse,
                                      int depth) const {
    const IsoFactorization f = isotropic_factorize(m);
    const double x = f.sv.lam1;
    const double y = std::max(f.sv.lam2, tp.theta);
    const ThirdConstraintMove move = third_constraint_direction(x, y, tp.theta);
    const Mat2 dir = to_original(f, move.dir);

    auto lam2_gap = [&](double t) { return singular_values(m + t * dir).lam2 - tp.p1.b; };
    auto det_gap = [&](double t) { return singular_values(m + t * dir).product() - tp.p2.product(); };
    const double bracket_tol = cfg_.margin_tol * near_scale(tp.p1.b * tp.p1.b);

    double t1 = move.t_minus;
    const double at_minus = lam2_gap(t1);
    if (at_minus < -bracket_tol) {
      throw Error(ErrorCode::BracketFailure, "lam2 - b1 does not change sign on [t-, 0]");
    }
    if (at_minus > 0.0) t1 = bisect([&](double t) { return lam2_gap(t) <= 0.0; }, 0.0, t1);

    double t2 = move.t_plus;
    const double at_plus = det_gap(t2);
    if (at_plus < -bracket_tol) {
      throw Error(ErrorCode::BracketFailure, "lam1 lam2 - a2 b2 does not change sign on [0, t+]");
    }
    if (at_plus > 0.0) t2 = bisect([&](double t) { return det_gap(t) <= 0.0; }, 0.0, t2);
    return make_split(m, dir, t1, t2, recurse, depth);
  }

  const LaminateConfig& cfg_;
};

}  // namespace

LaminateTree decompose(const Mat2& xi, const Hull& hull, const LaminateConfig& cfg) {
  return Decomposer(cfg).general(xi, hull, 0);
}

LaminateTree one_point_decompose(const Mat2& xi, const KPoint& p, const LaminateConfig& cfg) {
  return Decomposer(cfg).one_point(xi, p, 0);
}

LaminateTree two_point_decompose(const Mat2& xi, const KPoint& p1, const KPoint& p2,
                                 const LaminateConfig& cfg) {
  return Decomposer(cfg).two_point(xi, label_two_point(p1, p2), 0);
}

}  // namespace rcohull
