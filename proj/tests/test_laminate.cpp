#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "rcohull/error.hpp"
#include "rcohull/laminate.hpp"
#include "rcohull/sampling.hpp"

using namespace rcohull;

namespace {

KSet K(std::vector<KPoint> pts) { return KSet::validate(pts); }

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InvalidArgument;
}

void expect_verified(const LaminateTree& t, const Mat2& xi, const KSet& k) {
  const VerifyReport r = verify(t, xi, k);
  EXPECT_TRUE(r.passed) << (r.problems.empty() ? "" : r.problems.front());
}

}  // namespace

TEST(Decompose, WorkedOnePointExample) {
  const KSet k = K({{1, 2}});
  const LaminateTree t = decompose(Mat2::diag(1.5, 1), Hull(k));
  ASSERT_EQ(t.leaf_count(), 2u);
  const LaminateNode& root = t.root();
  EXPECT_NEAR(root.weight, 0.875, 1e-12);
  EXPECT_LE((t.node(root.minus).matrix - Mat2::diag(2, 1)).max_abs(), 1e-11);
  EXPECT_LE((t.node(root.plus).matrix - Mat2::diag(-2, 1)).max_abs(), 1e-11);
  EXPECT_EQ(rank_one_defect(t.node(root.minus).matrix - t.node(root.plus).matrix), 0.0);
  expect_verified(t, Mat2::diag(1.5, 1), k);
}

TEST(Decompose, PointInEIsLeaf) {
  const KSet k = K({{1, 2}});
  const LaminateTree t = decompose(Mat2(0, 2, 1, 0), Hull(k));
  EXPECT_EQ(t.size(), 1u);
  EXPECT_EQ(t.root().matched, (KPoint{1, 2}));
  EXPECT_EQ(one_point_decompose(Mat2::diag(1, 2), {1, 2}).size(), 1u);
}

TEST(Decompose, OutsideThrows) {
  EXPECT_EQ(code_of([] { decompose(Mat2::diag(2, 2), Hull(K({{1, 2}}))); }), ErrorCode::OutsideHull);
  EXPECT_EQ(code_of([] { one_point_decompose(Mat2::diag(2, 2), {1, 2}); }), ErrorCode::OutsideHull);
}

TEST(Decompose, DepthLimit) {
  LaminateConfig cfg;
  cfg.max_depth = 0;
  EXPECT_EQ(code_of([&] { decompose(Mat2::diag(1.5, 1), Hull(K({{1, 2}})), cfg); }), ErrorCode::DepthExceeded);
}

TEST(Decompose, ThirdConstraintSplitsAlongA) {
  // On lam1 lam2 + (lam2 - lam1) = 7, strictly inside the other two constraints.
  const KSet k = K({{1, 4}, {2, 3}});
  const Mat2 xi = Mat2::diag(1.5, 3.4);
  const LaminateTree t = two_point_decompose(xi, {1, 4}, {2, 3});
  const LaminateNode& root = t.root();
  ASSERT_FALSE(root.is_leaf());
  const SVPair lo = singular_values(t.node(root.minus).matrix);
  const SVPair hi = singular_values(t.node(root.plus).matrix);
  EXPECT_NEAR(lo.lam2, 4.0, 1e-10);
  EXPECT_NEAR(hi.product(), 6.0, 1e-10);
  expect_verified(t, xi, k);
  expect_verified(decompose(xi, Hull(k)), xi, k);
}

TEST(Decompose, StepOneSplit) {
  const KSet k = K({{1, 4}, {2, 3}});
  const LaminateTree t = two_point_decompose(Mat2::diag(0.5, 4), {2, 3}, {1, 4});
  EXPECT_NEAR(t.root().weight, 0.75, 1e-15);
  EXPECT_EQ(t.leaf_count(), 2u);
  EXPECT_EQ(t.node(t.root().minus).matrix, Mat2::diag(1, 4));
  EXPECT_EQ(t.node(t.root().plus).matrix, Mat2::diag(-1, 4));
  expect_verified(t, Mat2::diag(0.5, 4), k);
}

TEST(Decompose, DetPreservingSplit) {
  const double r = std::sqrt(2.0);
  const KSet k = K({{1, 2}});
  const LaminateTree t = one_point_decompose(Mat2::diag(r, r), {1, 2});
  ASSERT_EQ(t.leaf_count(), 2u);
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!t.node(i).is_leaf()) continue;
    const SVPair s = singular_values(t.node(i).matrix);
    EXPECT_NEAR(s.lam1, 1.0, 1e-10);
    EXPECT_NEAR(s.lam2, 2.0, 1e-10);
  }
  expect_verified(t, Mat2::diag(r, r), k);
}

TEST(Decompose, ProductTightTwoPoint) {
  // lam1 lam2 = a2 b2 = 6 with room left in the other constraints.
  const KSet k = K({{1, 4}, {2, 3}});
  const Mat2 xi = Mat2::diag(2.2, 6.0 / 2.2);
  ASSERT_NEAR(hull_margin(xi, Hull(k)).value, 0.0, 1e-12);
  expect_verified(two_point_decompose(xi, {1, 4}, {2, 3}), xi, k);
  expect_verified(decompose(xi, Hull(k)), xi, k);
}

TEST(Decompose, ZeroSmallSingularValue) {
  const KSet k = K({{1, 2}, {0.5, 3}});
  for (double y : {0.5, 1.5, sigma(m_envelope(k), 0.0)}) {
    const Mat2 xi = Mat2::diag(0.0, y);
    expect_verified(decompose(xi, Hull(k)), xi, k);
  }
}

TEST(TwoPoint, ThetaAndHypotheses) {
  EXPECT_EQ(two_point_theta({1, 4}, {2, 3}), 1.0);
  EXPECT_EQ(code_of([] { two_point_decompose(Mat2::diag(1, 1), {1, 2}, {2, 3}); }),
            ErrorCode::HypothesesViolated);
}

TEST(ReduceBoundary, Cases) {
  ReductionCase rc = reduce_boundary(Mat2::diag(1, 2), Hull(K({{1, 2}})));
  EXPECT_EQ(rc.tag, ReductionTag::ThetaZero);
  ASSERT_EQ(rc.active.size(), 1u);
  EXPECT_EQ(rc.active[0], (KPoint{1, 2}));

  const Hull two(K({{1, 4}, {2, 3}}));
  rc = reduce_boundary(Mat2::diag(1.5, 3.4), two);
  EXPECT_EQ(rc.tag, ReductionTag::ThetaInterior);
  EXPECT_EQ(rc.theta_bar, 1.0);
  EXPECT_DOUBLE_EQ(rc.subdiff.lo, 1.0);
  EXPECT_DOUBLE_EQ(rc.subdiff.hi, 3.0);
  ASSERT_EQ(rc.active.size(), 2u);
  EXPECT_EQ(rc.active[0], (KPoint{1, 4}));
  EXPECT_EQ(rc.active[1], (KPoint{2, 3}));

  rc = reduce_boundary(Mat2::diag(0.5, 4), two);
  EXPECT_EQ(rc.tag, ReductionTag::ThetaMax);
  EXPECT_EQ(rc.active[0], (KPoint{1, 4}));
  EXPECT_EQ(to_string(ReductionTag::ThetaMax), "ThetaMax");
}

TEST(Verify, DetectsTampering) {
  const KSet k = K({{1, 2}});
  const Mat2 xi = Mat2::diag(1.5, 1);
  LaminateTree t = LaminateTree::split(xi, 0.875, LaminateTree::leaf(Mat2::diag(2, 1), {1, 2}),
                                       LaminateTree::leaf(Mat2::diag(-2, 1), {1, 2}));
  VerifyReport r = verify(t, xi, k);
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.worst_barycenter, 0.0);

  LaminateTree bad = t;
  bad.node(0).weight = 0.9;
  r = verify(bad, xi, k);
  EXPECT_FALSE(r.passed);
  EXPECT_NEAR(r.worst_barycenter, 0.1, 1e-12);

  bad = t;
  bad.node(1).matrix = Mat2::diag(3, 1);
  r = verify(bad, xi, k);
  EXPECT_FALSE(r.passed);
  EXPECT_DOUBLE_EQ(r.worst_leaf_distance, 1.0);

  bad = t;
  bad.node(0).weight = 1.5;
  EXPECT_EQ(verify(bad, xi, k).bad_weights, 1u);

  bad = LaminateTree::split(Mat2::diag(1.5, 1.5), 0.5, LaminateTree::leaf(Mat2::diag(1, 2), {1, 2}),
                            LaminateTree::leaf(Mat2::diag(2, 1), {1, 2}));
  r = verify(bad, Mat2::diag(1.5, 1.5), k);
  EXPECT_FALSE(r.passed);
  EXPECT_GT(r.worst_rank_one_defect, 0.1);

  EXPECT_FALSE(verify(t, Mat2::diag(1.4, 1), k).passed);
}

TEST(Certificate, RoundTripIsBitExact) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const KSet k = KSet::validate(oracle::random_k(rng, 1 + trial % 5));
    const Hull h(k);
    const Mat2 xi = sample_in_hull(h, rng);
    const LaminateTree t = decompose(xi, h);
    const std::string text = to_certificate(t);
    const LaminateTree back = parse_certificate(text);
    ASSERT_EQ(back.size(), t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
      ASSERT_EQ(back.node(i).matrix, t.node(i).matrix);
      ASSERT_EQ(back.node(i).weight, t.node(i).weight);
      ASSERT_EQ(back.node(i).matched, t.node(i).matched);
      ASSERT_EQ(back.node(i).minus, t.node(i).minus);
    }
    ASSERT_EQ(to_certificate(back), text);
  }
}

TEST(Certificate, Format) {
  const LaminateTree t = LaminateTree::split(Mat2::diag(1.5, 1), 0.875, LaminateTree::leaf(Mat2::diag(2, 1), {1, 2}),
                                             LaminateTree::leaf(Mat2::diag(-2, 1), {1, 2}));
  const std::string text = to_certificate(t);
  EXPECT_NE(text.find("\"weight\": 0.875"), std::string::npos);
  EXPECT_NE(text.find("\"leaf_matrix\": [-2, 0, 0, 1]"), std::string::npos);
  EXPECT_NE(text.find("\"matched_point\": [1, 2]"), std::string::npos);
  EXPECT_EQ(code_of([] { parse_certificate("{\"matrix\": [1, 2]}"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { parse_certificate("not json"); }), ErrorCode::ParseError);
}

TEST(Tree, SubtreeAndDepth) {
  const LaminateTree inner = LaminateTree::split(Mat2::diag(1, 1), 0.5, LaminateTree::leaf(Mat2::diag(1, 2), {1, 2}),
                                                 LaminateTree::leaf(Mat2::diag(1, 0), {1, 2}));
  const LaminateTree t = LaminateTree::split(Mat2::diag(0, 0), 0.5, inner, LaminateTree::leaf(Mat2::diag(-1, -1), {1, 2}));
  EXPECT_EQ(t.depth(), 2);
  EXPECT_EQ(t.leaf_count(), 3u);
  const LaminateTree sub = t.subtree(static_cast<std::size_t>(t.root().minus));
  EXPECT_EQ(sub.size(), 3u);
  EXPECT_EQ(sub.root().matrix, Mat2::diag(1, 1));
  EXPECT_EQ(sub.node(2).matrix, Mat2::diag(1, 0));
}

TEST(Decompose, SoundOnRandomHullPoints) {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 300; ++trial) {
    const KSet k = KSet::validate(oracle::random_k(rng, 1 + trial % 5));
    const Hull h(k);
    for (int i = 0; i < 5; ++i) {
      const Mat2 xi = sample_in_hull(h, rng);
      const LaminateTree t = decompose(xi, h);
      const VerifyReport r = verify(t, xi, k);
      ASSERT_TRUE(r.passed) << r.problems.front();
      if (k.size() <= 2) ASSERT_LE(r.depth, 4);
    }
  }
}

TEST(Decompose, SoundOnBoundaryPoints) {
  std::mt19937_64 rng(33);
  Rng orng(34);
  for (int trial = 0; trial < 300; ++trial) {
    const KSet k = KSet::validate(oracle::random_k(rng, 1 + trial % 5));
    const Hull h(k);
    std::uniform_real_distribution<double> ux(0.0, k.b_max());
    const double x = ux(rng);
    const double y = sigma(h.envelope(), x);
    if (y < x) continue;
    const Mat2 xi = random_with_sv({x, y}, orng);
    const LaminateTree t = decompose(xi, h);
    const VerifyReport r = verify(t, xi, k);
    ASSERT_TRUE(r.passed) << r.problems.front();
    if (k.size() <= 2) ASSERT_LE(r.depth, 4);
  }
}

TEST(Decompose, FailsExactlyOutside) {
  std::mt19937_64 rng(35);
  for (int trial = 0; trial < 100; ++trial) {
    const KSet k = KSet::validate(oracle::random_k(rng, 1 + trial % 5));
    const Hull h(k);
    for (int i = 0; i < 20; ++i) {
      const Mat2 xi = oracle::random_matrix(rng, k.b_max());
      const Classification c = classify(xi, h);
      bool threw_outside = false;
      try {
        decompose(xi, h);
      } catch (const Error& e) {
        ASSERT_EQ(e.code(), ErrorCode::OutsideHull);
        threw_outside = true;
      }
      ASSERT_EQ(threw_outside, c.tag == HullClass::Outside);
    }
  }
}

TEST(Decompose, CertificatesAreIsotropic) {
  std::mt19937_64 rng(36);
  Rng orng(37);
  for (int trial = 0; trial < 100; ++trial) {
    const KSet k = KSet::validate(oracle::random_k(rng, 1 + trial % 4));
    const Hull h(k);
    const SVPair sv = sample_sv_in_hull(h, orng);
    const Mat2 d = Mat2::diag(sv.lam1, sv.lam2);
    const Mat2 r = random_orthogonal(orng), q = random_orthogonal(orng);
    const LaminateTree a = decompose(d, h), b = decompose(r * d * q, h);
    expect_verified(a, d, k);
    expect_verified(b, r * d * q, k);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      const SVPair sa = singular_values(a.node(i).matrix), sb = singular_values(b.node(i).matrix);
      ASSERT_NEAR(sa.lam1, sb.lam1, 1e-8);
      ASSERT_NEAR(sa.lam2, sb.lam2, 1e-8);
      ASSERT_NEAR(a.node(i).weight, b.node(i).weight, 1e-8);
    }
  }
}

TEST(Decompose, OnePointMembershipMatchesInequalities) {
  const KPoint p{1, 2};
  const KSet k = K({p});
  const Hull h(k);
  for (int i = 0; i <= 24; ++i) {
    for (int j = i; j <= 24; ++j) {
      const double x = 0.125 * i, y = 0.125 * j;
      bool built = true;
      try {
        const LaminateTree t = one_point_decompose(Mat2::diag(x, y), p);
        EXPECT_TRUE(verify(t, Mat2::diag(x, y), k).passed) << x << " " << y;
      } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::OutsideHull);
        built = false;
      }
      EXPECT_EQ(built, oracle::in_one_point_hull(x, y, p)) << x << " " << y;
    }
  }
}

TEST(Decompose, SmallestAxisOption) {
  LaminateConfig cfg;
  cfg.interior_axis = InteriorAxis::Smallest;
  std::mt19937_64 rng(38);
  for (int trial = 0; trial < 100; ++trial) {
    const KSet k = KSet::validate(oracle::random_k(rng, 1 + trial % 4));
    const Hull h(k);
    const Mat2 xi = sample_in_hull(h, rng);
    expect_verified(decompose(xi, h, cfg), xi, k);
  }
}
