#include "rcohull/hull.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rcohull/error.hpp"

namespace rcohull {

Hull::Hull(KSet k) : k_(std::move(k)), env_(m_envelope(k_)) {}

Margin hull_margin(const SVPair& sv, const Hull& hull) {
  const double det = sv.product();
  const double gap = sv.gap();
  const PLConvex& env = hull.envelope();
  const std::vector<double> cands = env.candidates();

  std::vector<double> slack(cands.size());
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < cands.size(); ++i) {
    slack[i] = env(cands[i]) - (det + cands[i] * gap);
    best = std::min(best, slack[i]);
  }
  // The constraint is affine in theta and m is piecewise linear, so the
  // minimum sits on a candidate. Ties are judged up to round-off.
  const double tie_tol = 1e-12 * std::max({1.0, std::abs(det), hull.kset().b_max() * gap});
  Margin out{best, 0.0, 0};
  bool found = false;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    if (slack[i] <= best + tie_tol) {
      if (!found) out.argmin_theta = cands[i];
      found = true;
      ++out.ties;
    }
  }
  return out;
}

Margin hull_margin(const Mat2& xi, const Hull& hull) {
  return hull_margin(singular_values(xi), hull);
}

std::string_view to_string(HullClass c) {
  switch (c) {
    case HullClass::InE: return "E";
    case HullClass::InteriorHull: return "interior";
    case HullClass::BoundaryHull: return "boundary";
    case HullClass::Outside: return "outside";
  }
  return "unknown";
}

Classification classify(const SVPair& sv, const Hull& hull, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "classification tolerance must be > 0");
  const Margin m = hull_margin(sv, hull);
  Classification c;
  c.margin = m.value;
  c.ties = m.ties;
  if (sv_distance_to_E(sv, hull.kset()) <= tol) {
    c.tag = HullClass::InE;
    c.tight_theta = m.argmin_theta;
  } else if (m.value > tol) {
    c.tag = HullClass::InteriorHull;
  } else if (m.value >= -tol) {
    c.tag = HullClass::BoundaryHull;
    c.tight_theta = m.argmin_theta;
  } else {
    c.tag = HullClass::Outside;
  }
  return c;
}

Classification classify(const Mat2& xi, const Hull& hull, double tol) {
  return classify(singular_values(xi), hull, tol);
}

double h_theta(const Mat2& xi, double theta) {
  if (!(theta >= 0.0)) throw Error(ErrorCode::InvalidTheta, "H_theta needs theta >= 0");
  const SVPair sv = singular_values(xi);
  return std::max(sv.product() + theta * sv.gap() - theta * theta, 0.0);
}

std::size_t nearest_point(const SVPair& sv, const KSet& k) {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < k.size(); ++i) {
    const double d = std::hypot(sv.lam1 - k[i].a, sv.lam2 - k[i].b);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

double sv_distance_to_E(const SVPair& sv, const KSet& k) {
  const KPoint& p = k[nearest_point(sv, k)];
  return std::hypot(sv.lam1 - p.a, sv.lam2 - p.b);
}

double sv_distance_to_E(const Mat2& xi, const KSet& k) {
  return sv_distance_to_E(singular_values(xi), k);
}

}  // namespace rcohull
