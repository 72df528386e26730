#pragma once

#include <random>

#include "rcohull/hull.hpp"
#include "rcohull/mat2.hpp"

namespace rcohull {

using Rng = std::mt19937_64;

/// Uniform rotation, composed with a reflection half of the time.
Mat2 random_orthogonal(Rng& rng);

/// Singular-value pair drawn uniformly from the part of [0, b_max]^2 with
/// lam1 <= lam2 and nonnegative hull margin (rejection sampling).
SVPair sample_sv_in_hull(const Hull& hull, Rng& rng);

/// R diag(lam1, lam2) Q for random orthogonal R, Q.
Mat2 random_with_sv(const SVPair& sv, Rng& rng);

Mat2 sample_in_hull(const Hull& hull, Rng& rng);

}  // namespace rcohull
