#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "rcohull/laminate.hpp"

namespace rcohull {

namespace {

std::string fmt(const char* pattern, std::size_t node, double value) {
  char buf[160];
  std::snprintf(buf, sizeof buf, pattern, node, value);
  return buf;
}

}  // namespace

VerifyReport verify(const LaminateTree& tree, const Mat2& xi, const KSet& k,
                    const VerifyTolerances& tol) {
  VerifyReport r;
  r.nodes = tree.size();
  if (tree.size() == 0) {
    r.passed = false;
    r.problems.emplace_back("empty tree");
    return r;
  }
  r.leaves = tree.leaf_count();
  r.depth = tree.depth();
  r.root_error = (tree.root().matrix - xi).max_abs();
  if (!(r.root_error <= tol.root)) r.problems.push_back(fmt("node %zu: root differs by %.3g", 0, r.root_error));

  for (std::size_t i = 0; i < tree.size(); ++i) {
    const LaminateNode& n = tree.node(i);
    if (n.is_leaf()) {
      const SVPair sv = singular_values(n.matrix);
      double best = std::numeric_limits<double>::infinity();
      for (const KPoint& p : k.points()) best = std::min(best, std::hypot(sv.lam1 - p.a, sv.lam2 - p.b));
      r.worst_leaf_distance = std::max(r.worst_leaf_distance, best);
      if (!(best <= tol.leaf)) r.problems.push_back(fmt("node %zu: leaf is %.3g away from K", i, best));
      const auto pts = k.points();
      if (std::find(pts.begin(), pts.end(), n.matched) == pts.end()) {
        ++r.unknown_points;
        r.problems.push_back(fmt("node %zu: matched point not in K (a = %g)", i, n.matched.a));
      }
      continue;
    }
    const auto lo = static_cast<std::size_t>(n.minus);
    const auto hi = static_cast<std::size_t>(n.plus);
    if (lo <= i || hi <= i || lo >= tree.size() || hi >= tree.size()) {
      r.problems.push_back("node " + std::to_string(i) + ": bad child index");
      continue;
    }
    const Mat2& a = tree.node(lo).matrix;
    const Mat2& b = tree.node(hi).matrix;
    if (!(n.weight > 0.0 && n.weight < 1.0)) {
      ++r.bad_weights;
      r.problems.push_back(fmt("node %zu: weight %.17g outside (0, 1)", i, n.weight));
    }
    const double bary = (n.matrix - (n.weight * a + (1.0 - n.weight) * b)).max_abs();
    r.worst_barycenter = std::max(r.worst_barycenter, bary);
    if (!(bary <= tol.barycenter)) r.problems.push_back(fmt("node %zu: barycenter error %.3g", i, bary));
    const double defect = rank_one_defect(a - b);
    r.worst_rank_one_defect = std::max(r.worst_rank_one_defect, defect);
    if (!(defect <= tol.rank_one)) r.problems.push_back(fmt("node %zu: rank-one defect %.3g", i, defect));
  }
  r.passed = r.problems.empty();
  return r;
}

}  // namespace rcohull
