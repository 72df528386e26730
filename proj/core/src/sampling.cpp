#include "rcohull/sampling.hpp"

#include <numbers>
#include <utility>

#include "rcohull/error.hpp"

namespace rcohull {

Mat2 random_orthogonal(Rng& rng) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  const Mat2 r = Mat2::rotation(angle(rng));
  if (std::bernoulli_distribution(0.5)(rng)) return r * Mat2::diag(1.0, -1.0);
  return r;
}

SVPair sample_sv_in_hull(const Hull& hull, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, hull.kset().b_max());
  for (int attempt = 0; attempt < 1000000; ++attempt) {
    double x = u(rng);
    double y = u(rng);
    if (x > y) std::swap(x, y);
    const SVPair sv{x, y};
    if (hull_margin(sv, hull).value >= 0.0) return sv;
  }
  throw Error(ErrorCode::InvalidArgument, "rejection sampling found no point in the hull");
}

Mat2 random_with_sv(const SVPair& sv, Rng& rng) {
  const Mat2 r = random_orthogonal(rng);
  const Mat2 q = random_orthogonal(rng);
  return r * Mat2::diag(sv.lam1, sv.lam2) * q;
}

Mat2 sample_in_hull(const Hull& hull, Rng& rng) {
  const SVPair sv = sample_sv_in_hull(hull, rng);
  return random_with_sv(sv, rng);
}

}  // namespace rcohull
