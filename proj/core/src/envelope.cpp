#include "rcohull/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rcohull/error.hpp"

namespace rcohull {

KSet KSet::validate(std::span<const KPoint> raw) {
  if (raw.empty()) throw Error(ErrorCode::EmptyK, "K must contain at least one point");
  KSet k;
  k.points_.assign(raw.begin(), raw.end());
  for (const KPoint& p : k.points_) {
    if (!std::isfinite(p.a) || !std::isfinite(p.b)) {
      throw Error(ErrorCode::NonFinite, "K points must be finite");
    }
    if (!(p.a > 0.0)) {
      throw Error(ErrorCode::PointOutsideT,
                  "min a must be > 0 (got a = " + std::to_string(p.a) + ")");
    }
    if (p.a > p.b) {
      throw Error(ErrorCode::PointOutsideT, "every point needs a <= b (got a = " +
                                                std::to_string(p.a) +
                                                ", b = " + std::to_string(p.b) + ")");
    }
  }
  std::sort(k.points_.begin(), k.points_.end());
  k.points_.erase(std::unique(k.points_.begin(), k.points_.end()), k.points_.end());
  k.a_min_ = k.points_.front().a;
  for (const KPoint& p : k.points_) {
    k.a_min_ = std::min(k.a_min_, p.a);
    k.b_max_ = std::max(k.b_max_, p.b);
    k.max_product_ = std::max(k.max_product_, p.product());
  }
  return k;
}

KSet validate_kset(std::span<const KPoint> raw) { return KSet::validate(raw); }

PLConvex::PLConvex(std::vector<Line> pieces, std::vector<double> breakpoints, double lo,
                   double hi, std::optional<double> tail_start)
    : pieces_(std::move(pieces)),
      breaks_(std::move(breakpoints)),
      lo_(lo),
      hi_(hi),
      tail_start_(tail_start) {
  if (pieces_.empty() || breaks_.size() + 1 != pieces_.size()) {
    throw Error(ErrorCode::InvalidArgument, "PLConvex needs one more piece than breakpoints");
  }
}

std::size_t PLConvex::piece_index(double theta) const {
  return static_cast<std::size_t>(std::upper_bound(breaks_.begin(), breaks_.end(), theta) -
                                  breaks_.begin());
}

double PLConvex::operator()(double theta) const {
  if (tail_start_ && theta > *tail_start_) return theta * theta;
  if (theta < lo_ || theta > hi_) {
    throw Error(ErrorCode::InvalidArgument, "theta outside the domain of the envelope");
  }
  // A convex piecewise-linear function is the max of its pieces; checking the
  // neighbours keeps the result identical to a max over all lines near a kink.
  const std::size_t i = piece_index(theta);
  double v = pieces_[i].at(theta);
  if (i > 0) v = std::max(v, pieces_[i - 1].at(theta));
  if (i + 1 < pieces_.size()) v = std::max(v, pieces_[i + 1].at(theta));
  return v;
}

std::vector<double> PLConvex::candidates() const {
  std::vector<double> out;
  out.reserve(breaks_.size() + 2);
  if (std::isfinite(lo_)) out.push_back(lo_);
  out.insert(out.end(), breaks_.begin(), breaks_.end());
  if (std::isfinite(hi_)) out.push_back(hi_);
  return out;
}

PLConvex m_envelope(const KSet& k) {
  std::vector<Line> lines;
  lines.reserve(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) {
    lines.push_back({k[i].slope(), k[i].product(), i});
  }
  std::sort(lines.begin(), lines.end(), [](const Line& l, const Line& r) {
    if (l.slope != r.slope) return l.slope < r.slope;
    if (l.intercept != r.intercept) return l.intercept > r.intercept;
    return l.source < r.source;
  });

  // Upper hull of lines sorted by slope; a middle line is dropped when the
  // outer two meet at or left of where it would take over.
  std::vector<Line> hull;
  for (const Line& l : lines) {
    if (!hull.empty() && hull.back().slope == l.slope) continue;
    while (hull.size() >= 2) {
      const Line& l1 = hull[hull.size() - 2];
      const Line& l2 = hull.back();
      if ((l1.intercept - l.intercept) * (l2.slope - l1.slope) <=
          (l1.intercept - l2.intercept) * (l.slope - l1.slope)) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(l);
  }

  auto crossing = [](const Line& l, const Line& r) {
    return (l.intercept - r.intercept) / (r.slope - l.slope);
  };
  const double b_max = k.b_max();
  std::size_t first = 0;
  while (first + 1 < hull.size() && crossing(hull[first], hull[first + 1]) <= 0.0) ++first;
  std::size_t last = hull.size();
  while (last - 1 > first && crossing(hull[last - 2], hull[last - 1]) >= b_max) --last;

  std::vector<Line> pieces(hull.begin() + static_cast<std::ptrdiff_t>(first),
                           hull.begin() + static_cast<std::ptrdiff_t>(last));
  std::vector<double> breaks;
  for (std::size_t i = 0; i + 1 < pieces.size(); ++i) {
    breaks.push_back(crossing(pieces[i], pieces[i + 1]));
  }
  return PLConvex(std::move(pieces), std::move(breaks), 0.0, b_max);
}

PLConvex extend_F(const PLConvex& env, const KSet& k) {
  const double inf = std::numeric_limits<double>::infinity();
  const double b_max = k.b_max();
  std::vector<Line> pieces;
  std::vector<double> breaks;
  const Line& head = env.pieces().front();
  if (head.slope > 0.0) {
    pieces.push_back({0.0, k.max_product(), kNoSource});
    breaks.push_back(0.0);
  }
  pieces.insert(pieces.end(), env.pieces().begin(), env.pieces().end());
  breaks.insert(breaks.end(), env.breakpoints().begin(), env.breakpoints().end());
  // theta^2 beyond b_max, represented by its tangent at b_max.
  pieces.push_back({2.0 * b_max, -b_max * b_max, kNoSource});
  breaks.push_back(b_max);
  return PLConvex(std::move(pieces), std::move(breaks), -inf, inf, b_max);
}

Subdiff subdifferential(const PLConvex& f, double theta) {
  if (f.tail_start() && theta > *f.tail_start()) return {2.0 * theta, 2.0 * theta};
  const auto breaks = f.breakpoints();
  const auto pieces = f.pieces();
  const double tol = 1e-12 * std::max(1.0, std::abs(theta));
  for (std::size_t j = 0; j < breaks.size(); ++j) {
    if (std::abs(theta - breaks[j]) <= tol) return {pieces[j].slope, pieces[j + 1].slope};
  }
  const double s = pieces[f.piece_index(theta)].slope;
  return {s, s};
}

double sigma(const PLConvex& env, double x) {
  if (!(x >= 0.0)) throw Error(ErrorCode::NegativeX, "sigma needs x >= 0");
  double best = std::numeric_limits<double>::infinity();
  for (double theta : env.candidates()) {
    // At x = 0 the quotient m(theta)/theta blows up at theta = 0, so only
    // positive candidates compete.
    if (x == 0.0 && theta <= 0.0) continue;
    best = std::min(best, (theta * x + env(theta)) / (x + theta));
  }
  return best;
}

double ClosedFormSigma::operator()(double x) const {
  if (!(x >= 0.0)) throw Error(ErrorCode::NegativeX, "sigma needs x >= 0");
  double r = cap;
  if (x > 0.0) r = std::min(r, product / x);
  for (const Tangent& t : tangents) r = std::min(r, (t.theta * x + t.value) / (x + t.theta));
  return r;
}

double crossing_theta(const KPoint& pi, const KPoint& pj) {
  return (pi.product() - pj.product()) / (pj.slope() - pi.slope());
}

namespace {

ClosedFormSigma one_point(const KPoint& p) { return {p.product(), p.b, {}, 0}; }

// Labels so that a1 >= a2, then picks one of the three two-point cases.
ClosedFormSigma two_point(KPoint p1, KPoint p2) {
  if (p1.a < p2.a || (p1.a == p2.a && p1.b < p2.b)) std::swap(p1, p2);
  if (p1.product() > p2.product() && p2.b > p1.b) {
    const double theta = crossing_theta(p1, p2);
    return {p1.product(), p2.b, {{theta, p1.product() + theta * p1.slope()}}, 1};
  }
  if (p1.b >= p2.b) return {p1.product(), p1.b, {}, 2};
  return {p2.product(), p2.b, {}, 3};
}

}  // namespace

ClosedFormSigma sigma_closed_form(const KSet& k) {
  switch (k.size()) {
    case 1:
      return one_point(k[0]);
    case 2:
      return two_point(k[0], k[1]);
    case 3:
      break;
    default:
      throw Error(ErrorCode::UnsupportedCardinality,
                  "closed-form sigma is known only for |K| <= 3");
  }

  std::vector<KPoint> pts(k.points().begin(), k.points().end());
  // Parallel lines: the lower one never reaches the envelope.
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i + 1; j < 3; ++j) {
      if (pts[i].slope() == pts[j].slope()) {
        const std::size_t drop = pts[i].product() < pts[j].product() ? i : j;
        pts.erase(pts.begin() + static_cast<std::ptrdiff_t>(drop));
        ClosedFormSigma cf = two_point(pts[0], pts[1]);
        return cf;
      }
    }
  }

  std::sort(pts.begin(), pts.end(),
            [](const KPoint& l, const KPoint& r) { return l.product() > r.product(); });
  const KPoint& p1 = pts[0];
  const KPoint& p2 = pts[1];
  const KPoint& p3 = pts[2];
  const bool ordered = p1.product() > p2.product() && p2.product() > p3.product() &&
                       p3.b > std::max(p1.b, p2.b) && p2.slope() > p1.slope() &&
                       crossing_theta(p1, p2) < crossing_theta(p1, p3);
  if (!ordered) {
    throw Error(ErrorCode::NotApplicable,
                "three-point closed form needs a1b1 > a2b2 > a3b3, b3 > max(b1, b2), "
                "b2 - a2 > b1 - a1 and theta(1,2) < theta(1,3)");
  }
  const double t12 = crossing_theta(p1, p2);
  const double t23 = crossing_theta(p2, p3);
  return {p1.product(),
          p3.b,
          {{t12, p1.product() + t12 * p1.slope()}, {t23, p2.product() + t23 * p2.slope()}},
          0};
}

}  // namespace rcohull
