#pragma once

#include <array>
#include <cmath>
#include <iosfwd>

namespace rcohull {

/// Real 2x2 matrix with value semantics. Entries are stored row-major and
/// must be finite; the constructor throws Error(NonFinite) otherwise.
class Mat2 {
 public:
  constexpr Mat2() = default;
  Mat2(double m11, double m12, double m21, double m22);

  static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static Mat2 zero() { return {}; }
  static Mat2 diag(double d1, double d2) { return {d1, 0.0, 0.0, d2}; }
  static Mat2 rotation(double angle);
  /// u (x) v, the rank-one matrix u v^T.
  static Mat2 outer(double u1, double u2, double v1, double v2) {
    return {u1 * v1, u1 * v2, u2 * v1, u2 * v2};
  }

  double m11() const { return m_[0]; }
  double m12() const { return m_[1]; }
  double m21() const { return m_[2]; }
  double m22() const { return m_[3]; }
  double operator()(int row, int col) const { return m_[2 * row + col]; }
  const std::array<double, 4>& entries() const { return m_; }

  double det() const { return m_[0] * m_[3] - m_[1] * m_[2]; }
  double frobenius_sq() const {
    return m_[0] * m_[0] + m_[1] * m_[1] + m_[2] * m_[2] + m_[3] * m_[3];
  }
  double frobenius() const { return std::sqrt(frobenius_sq()); }
  double max_abs() const;
  Mat2 transpose() const { return {m_[0], m_[2], m_[1], m_[3]}; }

  Mat2& operator+=(const Mat2& o);
  Mat2& operator-=(const Mat2& o);
  Mat2& operator*=(double s);

  friend Mat2 operator+(Mat2 a, const Mat2& b) { return a += b; }
  friend Mat2 operator-(Mat2 a, const Mat2& b) { return a -= b; }
  friend Mat2 operator*(Mat2 a, double s) { return a *= s; }
  friend Mat2 operator*(double s, Mat2 a) { return a *= s; }
  friend Mat2 operator-(Mat2 a) { return a *= -1.0; }
  friend Mat2 operator*(const Mat2& a, const Mat2& b);
  friend bool operator==(const Mat2& a, const Mat2& b) = default;

 private:
  std::array<double, 4> m_{};
};

std::ostream& operator<<(std::ostream& os, const Mat2& m);

/// Ordered singular values, 0 <= lam1 <= lam2.
struct SVPair {
  double lam1 = 0.0;
  double lam2 = 0.0;

  double product() const { return lam1 * lam2; }
  double gap() const { return lam2 - lam1; }
};

/// left * xi * right == diag(sv.lam1, sv.lam2), with left/right orthogonal.
struct IsoFactorization {
  Mat2 left;
  Mat2 right;
  SVPair sv;
};

/// Closed-form singular values: lam_{1,2} = (sqrt(|xi|^2 + 2|det|) -/+
/// sqrt(|xi|^2 - 2|det|)) / 2. Both radicands are evaluated as sums of
/// squares, so they are never negative.
SVPair singular_values(const Mat2& xi);

/// Orthogonal pair diagonalizing xi onto diag(lam1, lam2). When det(xi) < 0
/// the right factor carries the reflection.
IsoFactorization isotropic_factorize(const Mat2& xi);

/// |det d| / max(|d|^2, 1e-300): zero exactly for rank <= 1, scale invariant.
double rank_one_defect(const Mat2& d);

/// Z = [[1, -lam2/lam1], [1, -lam2/lam1]]; det(diag(lam1, lam2) + t Z) is
/// independent of t. Throws ZeroSingularValue when lam1 == 0.
Mat2 det_preserving_direction(const SVPair& sv);

struct ThirdConstraintMove {
  Mat2 dir;
  double t_minus = 0.0;
  double t_plus = 0.0;
};

/// Rank-one direction A = [[1, s], [-s, -s^2]], s = sqrt((y - theta)/(x +
/// theta)), along which lam1 lam2 + theta (lam2 - lam1) stays equal to
/// x y + theta (y - x) for t in [t_minus, t_plus].
/// Throws InvalidTheta unless 0 < theta <= y.
ThirdConstraintMove third_constraint_direction(double x, double y, double theta);

}  // namespace rcohull
