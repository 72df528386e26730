#include "rcohull/mat2.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

#include "rcohull/error.hpp"

namespace rcohull {

Mat2::Mat2(double m11, double m12, double m21, double m22) : m_{m11, m12, m21, m22} {
  for (double v : m_) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::NonFinite, "Mat2 entries must be finite");
    }
  }
}

Mat2 Mat2::rotation(double angle) {
  double c = std::cos(angle);
  double s = std::sin(angle);
  // Quarter turns come out of cos/sin with ~1e-16 residue; keep them exact.
  if (std::abs(c) < 1e-15) c = 0.0;
  if (std::abs(s) < 1e-15) s = 0.0;
  return {c, -s, s, c};
}

double Mat2::max_abs() const {
  double r = 0.0;
  for (double v : m_) r = std::max(r, std::abs(v));
  return r;
}

Mat2& Mat2::operator+=(const Mat2& o) {
  for (int i = 0; i < 4; ++i) m_[i] += o.m_[i];
  return *this;
}

Mat2& Mat2::operator-=(const Mat2& o) {
  for (int i = 0; i < 4; ++i) m_[i] -= o.m_[i];
  return *this;
}

Mat2& Mat2::operator*=(double s) {
  for (double& v : m_) v *= s;
  return *this;
}

Mat2 operator*(const Mat2& a, const Mat2& b) {
  return {a.m_[0] * b.m_[0] + a.m_[1] * b.m_[2], a.m_[0] * b.m_[1] + a.m_[1] * b.m_[3],
          a.m_[2] * b.m_[0] + a.m_[3] * b.m_[2], a.m_[2] * b.m_[1] + a.m_[3] * b.m_[3]};
}

std::ostream& operator<<(std::ostream& os, const Mat2& m) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "[[%.17g, %.17g], [%.17g, %.17g]]", m.m11(), m.m12(), m.m21(),
                m.m22());
  return os << buf;
}

namespace {

// xi = [[e + f, g - h], [g + h, e - f]]. Then
//   q = hypot(e, h) = sqrt(|xi|^2 + 2 det) / 2,
//   r = hypot(f, g) = sqrt(|xi|^2 - 2 det) / 2,
// and xi = Rot(beta) diag(q + r, q - r) Rot(gamma) with
// beta = (atan2(h, e) + atan2(g, f)) / 2, gamma = (atan2(h, e) - atan2(g, f)) / 2.
struct HalfAngles {
  double q, r, beta, gamma;
};

HalfAngles half_angles(const Mat2& xi) {
  const double e = 0.5 * (xi.m11() + xi.m22());
  const double f = 0.5 * (xi.m11() - xi.m22());
  const double g = 0.5 * (xi.m21() + xi.m12());
  const double h = 0.5 * (xi.m21() - xi.m12());
  const double a1 = std::atan2(g, f);
  const double a2 = std::atan2(h, e);
  return {std::hypot(e, h), std::hypot(f, g), 0.5 * (a2 + a1), 0.5 * (a2 - a1)};
}

}  // namespace

SVPair singular_values(const Mat2& xi) {
  const HalfAngles ha = half_angles(xi);
  return {std::abs(ha.q - ha.r), ha.q + ha.r};
}

IsoFactorization isotropic_factorize(const Mat2& xi) {
  const HalfAngles ha = half_angles(xi);
  const double small = ha.q - ha.r;
  // Rot(-beta) xi Rot(-gamma) = diag(q + r, q - r); swap the axes so the
  // smaller value comes first and flip its sign through the right factor.
  const Mat2 swap{0.0, 1.0, 1.0, 0.0};
  const Mat2 flip = Mat2::diag(small < 0.0 ? -1.0 : 1.0, 1.0);
  return {swap * Mat2::rotation(-ha.beta), Mat2::rotation(-ha.gamma) * swap * flip,
          {std::abs(small), ha.q + ha.r}};
}

double rank_one_defect(const Mat2& d) {
  return std::abs(d.det()) / std::max(d.frobenius_sq(), 1e-300);
}

Mat2 det_preserving_direction(const SVPair& sv) {
  if (!(sv.lam1 > 0.0)) {
    throw Error(ErrorCode::ZeroSingularValue,
                "det-preserving direction needs lam1 > 0");
  }
  const double ratio = sv.lam2 / sv.lam1;
  return {1.0, -ratio, 1.0, -ratio};
}

ThirdConstraintMove third_constraint_direction(double x, double y, double theta) {
  if (!(theta > 0.0)) {
    throw Error(ErrorCode::InvalidTheta,
                "third-constraint direction needs theta > 0 (route theta = 0 to the one-point case)");
  }
  if (theta > y) {
    throw Error(ErrorCode::InvalidTheta, "third-constraint direction needs theta <= y");
  }
  const double s = std::sqrt((y - theta) / (x + theta));
  ThirdConstraintMove move;
  move.dir = Mat2{1.0, s, -s, -s * s};
  move.t_minus = -x * y * (x + theta) / (theta * (x + y));
  move.t_plus = (y - x) * (x + theta) / (x + y);
  return move;
}

}  // namespace rcohull
