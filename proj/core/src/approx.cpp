#include "rcohull/approx.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "json.hpp"
#include "rcohull/error.hpp"
#include "rcohull/sampling.hpp"

namespace rcohull {

DeltaFamily make_delta_family(const KSet& k, double delta) {
  if (!std::isfinite(delta) || delta < 0.0) {
    throw Error(ErrorCode::InvalidDelta, "delta must be finite and >= 0");
  }
  if (delta > k.a_min() / 2.0) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "delta = %g exceeds min a / 2 = %g", delta, k.a_min() / 2.0);
    throw Error(ErrorCode::DeltaTooLarge, buf);
  }
  std::vector<KPoint> moved;
  moved.reserve(k.size());
  for (const KPoint& p : k.points()) moved.push_back({p.a - delta, p.b - delta});
  return {k, delta, KSet::validate(moved)};
}

namespace {

std::string describe(const char* what, const SVPair& sv, double value) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s at (%.17g, %.17g): %.17g", what, sv.lam1, sv.lam2, value);
  return buf;
}

}  // namespace

ConditionReport check_condition1(const DeltaFamily& fam, std::size_t samples, std::uint64_t seed,
                                 double tol) {
  ConditionReport r;
  r.condition = 1;
  r.samples = samples;
  r.worst_margin = std::numeric_limits<double>::infinity();
  const Hull base(fam.base);
  const Hull shifted(fam.shifted);
  Rng rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, fam.shifted.size() - 1);
  for (std::size_t i = 0; i < samples; ++i) {
    SVPair sv;
    if (i % 4 == 0) {
      const KPoint& p = fam.shifted[pick(rng)];
      sv = {p.a, p.b};
    } else {
      sv = sample_sv_in_hull(shifted, rng);
    }
    const Mat2 xi = random_with_sv(sv, rng);
    const Classification c = classify(xi, base, tol);
    r.worst_margin = std::min(r.worst_margin, c.margin);
    if (c.tag != HullClass::InteriorHull) {
      r.failures.push_back(describe(std::string(to_string(c.tag)).c_str(), sv, c.margin));
    }
  }
  if (samples == 0) r.worst_margin = 0.0;
  r.passed = r.failures.empty();
  return r;
}

ConditionReport check_condition2(const DeltaFamily& fam, std::size_t samples, std::uint64_t seed) {
  ConditionReport r;
  r.condition = 2;
  r.samples = samples;
  r.bound = std::sqrt(2.0) * fam.delta;
  Rng rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, fam.shifted.size() - 1);
  for (std::size_t i = 0; i < samples; ++i) {
    const KPoint& p = fam.shifted[pick(rng)];
    const Mat2 eta = random_with_sv({p.a, p.b}, rng);
    const double d = sv_distance_to_E(eta, fam.base);
    r.max_distance = std::max(r.max_distance, d);
    if (d > r.bound + 1e-12) r.failures.push_back(describe("distance", {p.a, p.b}, d));
  }
  r.tight = samples > 0 && r.max_distance >= r.bound - 1e-6;
  r.passed = r.failures.empty() && (r.tight || fam.base.size() > 1);
  return r;
}

std::vector<double> default_delta_grid() {
  return {0.5, 0.25, 0.1, 0.01, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8, 1e-9, 1e-10, 1e-11, 1e-12};
}

ConditionReport check_condition3(const KSet& k, const Mat2& eta, std::span<const double> grid,
                                 double tol) {
  const Hull base(k);
  const Classification c = classify(eta, base, tol);
  if (c.tag != HullClass::InteriorHull) {
    throw Error(ErrorCode::NotInterior, "eta is not an interior point of the hull (" +
                                            std::string(to_string(c.tag)) + ")");
  }
  ConditionReport r;
  r.condition = 3;
  r.samples = 1;
  r.worst_margin = c.margin;

  std::vector<double> deltas;
  for (double d : grid) {
    if (d > 0.0 && d <= k.a_min() / 2.0) deltas.push_back(d);
  }
  std::sort(deltas.begin(), deltas.end());
  const SVPair sv = singular_values(eta);
  for (double d : deltas) {
    const Hull shifted(make_delta_family(k, d).shifted);
    if (hull_margin(sv, shifted).value < 0.0) break;
    r.delta_star = d;
  }
  if (!r.delta_star) r.failures.push_back(describe("no grid delta works", sv, c.margin));
  r.passed = r.delta_star.has_value() && *r.delta_star > 0.0;
  return r;
}

ConditionReport check_condition3_sampled(const KSet& k, std::size_t samples, std::uint64_t seed,
                                         std::span<const double> grid, double tol) {
  ConditionReport r;
  r.condition = 3;
  r.worst_margin = std::numeric_limits<double>::infinity();
  const Hull base(k);
  Rng rng(seed);
  while (r.samples < samples) {
    const Mat2 eta = sample_in_hull(base, rng);
    if (classify(eta, base, tol).tag != HullClass::InteriorHull) continue;
    ++r.samples;
    const ConditionReport one = check_condition3(k, eta, grid, tol);
    r.worst_margin = std::min(r.worst_margin, one.worst_margin);
    r.failures.insert(r.failures.end(), one.failures.begin(), one.failures.end());
    if (one.delta_star && (!r.delta_star || *one.delta_star < *r.delta_star)) r.delta_star = one.delta_star;
  }
  if (samples == 0) r.worst_margin = 0.0;
  r.passed = r.failures.empty() && samples > 0;
  return r;
}

std::string to_json(const ConditionReport& r) {
  nlohmann::ordered_json j;
  j["condition"] = r.condition;
  j["samples"] = r.samples;
  j["failures"] = r.failures;
  j["worst_margin"] = r.worst_margin;
  j["bound"] = r.bound;
  j["delta_star"] = r.delta_star ? nlohmann::ordered_json(*r.delta_star) : nlohmann::ordered_json();
  j["max_distance"] = r.max_distance;
  j["tight"] = r.tight;
  j["passed"] = r.passed;
  return j.dump(2);
}

std::string_view to_string(SolvabilityReason r) {
  switch (r) {
    case SolvabilityReason::GradientInE: return "GradientInE";
    case SolvabilityReason::GradientInInterior: return "GradientInInterior";
    case SolvabilityReason::GradientOutside: return "GradientOutside";
    case SolvabilityReason::GradientOnBoundaryOnly: return "GradientOnBoundaryOnly";
  }
  return "unknown";
}

SolvabilityVerdict check_solvable(const Mat2& grad_phi, const Hull& hull, double tol) {
  switch (classify(grad_phi, hull, tol).tag) {
    case HullClass::InE: return {true, SolvabilityReason::GradientInE};
    case HullClass::InteriorHull: return {true, SolvabilityReason::GradientInInterior};
    case HullClass::BoundaryHull: return {false, SolvabilityReason::GradientOnBoundaryOnly};
    case HullClass::Outside: break;
  }
  return {false, SolvabilityReason::GradientOutside};
}

}  // namespace rcohull
