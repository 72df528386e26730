#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace rcohull::cli {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double linspace(double hi, int n, int i) {
  return i == n - 1 ? hi : hi * static_cast<double>(i) / static_cast<double>(n - 1);
}

KSet kset_of(const RunConfig& cfg) { return KSet::validate(cfg.k_points); }

LaminateConfig laminate_config(const RunConfig& cfg) {
  LaminateConfig lc;
  lc.margin_tol = cfg.margin_tol;
  lc.leaf_tol = cfg.leaf_tol;
  lc.bisection_tol = cfg.bisection_tol;
  return lc;
}

}  // namespace

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  try {
    const auto j = nlohmann::json::parse(text.begin(), text.end());
    if (!j.is_object()) throw Error(ErrorCode::ParseError, "config must be an object");
    if (j.contains("k")) {
      for (const auto& p : j.at("k")) {
        if (!p.is_array() || p.size() != 2) throw Error(ErrorCode::ParseError, "K points are [a, b] pairs");
        cfg.k_points.push_back({p[0].get<double>(), p[1].get<double>()});
      }
    }
    if (j.contains("tol")) {
      const auto& t = j.at("tol");
      cfg.margin_tol = t.value("margin", cfg.margin_tol);
      cfg.leaf_tol = t.value("leaf", cfg.leaf_tol);
      cfg.bisection_tol = t.value("bisection", cfg.bisection_tol);
    }
    if (j.contains("grid")) {
      const auto& g = j.at("grid");
      if (g.contains("x_max")) cfg.x_max = g.at("x_max").get<double>();
      if (g.contains("y_max")) cfg.y_max = g.at("y_max").get<double>();
      cfg.resolution = g.value("resolution", cfg.resolution);
    }
    cfg.seed = j.value("seed", cfg.seed);
    cfg.samples = j.value("samples", cfg.samples);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("bad config: ") + e.what());
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void check_config(const RunConfig& cfg) {
  if (cfg.resolution < 2) throw Error(ErrorCode::InvalidArgument, "resolution must be >= 2");
  if (!(cfg.margin_tol > 0.0 && cfg.leaf_tol > 0.0 && cfg.bisection_tol > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "tolerances must be > 0");
  }
  for (const auto& v : {cfg.x_max, cfg.y_max}) {
    if (v && !(*v >= 0.0 && std::isfinite(*v))) throw Error(ErrorCode::InvalidArgument, "grid bounds must be finite and >= 0");
  }
  KSet::validate(cfg.k_points);
}

Mat2 parse_matrix(std::string_view text) {
  double v[4];
  std::size_t pos = 0;
  for (int i = 0; i < 4; ++i) {
    const std::size_t end = i < 3 ? text.find(',', pos) : text.size();
    if (end == std::string_view::npos) throw Error(ErrorCode::ParseError, "matrix needs 4 comma-separated numbers");
    std::string field(text.substr(pos, end - pos));
    char* stop = nullptr;
    v[i] = std::strtod(field.c_str(), &stop);
    if (field.empty() || *stop != '\0') throw Error(ErrorCode::ParseError, "bad matrix entry '" + field + "'");
    pos = end + 1;
  }
  return {v[0], v[1], v[2], v[3]};
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::OutsideHull:
    case ErrorCode::NotInterior:
      return 3;
    case ErrorCode::DepthExceeded:
    case ErrorCode::RootBracketFailure:
    case ErrorCode::BracketFailure:
    case ErrorCode::NoActivePoint:
    case ErrorCode::HypothesesViolated:
    case ErrorCode::ZeroSingularValue:
      return 4;
    default:
      return 2;
  }
}

Output cmd_sigma(const RunConfig& cfg) {
  check_config(cfg);
  const KSet k = kset_of(cfg);
  const PLConvex env = m_envelope(k);
  Output o;
  std::optional<ClosedFormSigma> closed;
  if (k.size() <= 3) {
    try {
      closed = sigma_closed_form(k);
    } catch (const Error& e) {
      o.err = "warning: closed form omitted: " + std::string(e.what()) + "\n";
    }
  }
  const double x_max = cfg.x_max.value_or(2.0 * k.b_max());
  o.out = closed ? "x,sigma,sigma_closed\n" : "x,sigma\n";
  for (int i = 0; i < cfg.resolution; ++i) {
    const double x = linspace(x_max, cfg.resolution, i);
    o.out += num(x) + "," + num(sigma(env, x));
    if (closed) o.out += "," + num((*closed)(x));
    o.out += "\n";
  }
  return o;
}

Output cmd_grid(const RunConfig& cfg) {
  check_config(cfg);
  const Hull hull(kset_of(cfg));
  const double x_max = cfg.x_max.value_or(1.25 * hull.kset().b_max());
  const double y_max = cfg.y_max.value_or(x_max);
  const int n = cfg.resolution;

  std::vector<std::string> rows(static_cast<std::size_t>(n));
  auto work = [&](int i) {
    std::string& row = rows[static_cast<std::size_t>(i)];
    const double x = linspace(x_max, n, i);
    for (int j = 0; j < n; ++j) {
      const double y = linspace(y_max, n, j);
      if (x > y) continue;
      row += num(x) + "," + num(y) + "," + std::string(to_string(classify(SVPair{x, y}, hull, cfg.margin_tol).tag)) + "\n";
    }
  };
  const int workers = static_cast<int>(std::max(1u, std::min(8u, std::thread::hardware_concurrency())));
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (int i = w; i < n; i += workers) work(i);
    });
  }
  for (auto& t : pool) t.join();

  Output o;
  o.out = "lam1,lam2,class\n";
  for (const auto& r : rows) o.out += r;
  return o;
}

Output cmd_laminate(const RunConfig& cfg, const Mat2& matrix) {
  check_config(cfg);
  const KSet k = kset_of(cfg);
  const Hull hull(k);
  const LaminateTree tree = decompose(matrix, hull, laminate_config(cfg));
  VerifyTolerances vt;
  vt.leaf = cfg.leaf_tol;
  const VerifyReport r = verify(tree, matrix, k, vt);
  Output o;
  o.out = to_certificate(tree);
  char buf[320];
  std::snprintf(buf, sizeof buf,
                "verify: %s\nnodes: %zu\nleaves: %zu\ndepth: %d\nroot_error: %.3g\n"
                "worst_barycenter: %.3g\nworst_rank_one_defect: %.3g\nworst_leaf_distance: %.3g\n",
                r.passed ? "pass" : "fail", r.nodes, r.leaves, r.depth, r.root_error,
                r.worst_barycenter, r.worst_rank_one_defect, r.worst_leaf_distance);
  o.err = buf;
  for (const auto& p : r.problems) o.err += "  " + p + "\n";
  o.exit_code = r.passed ? 0 : 4;
  return o;
}

Output cmd_approx(const RunConfig& cfg, double delta) {
  check_config(cfg);
  const DeltaFamily fam = make_delta_family(kset_of(cfg), delta);
  const auto grid = default_delta_grid();
  const ConditionReport reports[] = {
      check_condition1(fam, cfg.samples, cfg.seed, cfg.margin_tol),
      check_condition2(fam, cfg.samples, cfg.seed + 1),
      check_condition3_sampled(fam.base, std::max<std::size_t>(1, cfg.samples / 10), cfg.seed + 2, grid,
                               cfg.margin_tol),
  };
  bool all = true;
  std::string out = "{\n  \"delta\": " + num(delta) + ",\n  \"conditions\": [\n";
  for (std::size_t i = 0; i < 3; ++i) {
    all = all && reports[i].passed;
    std::string body = to_json(reports[i]);
    std::string indented = "    ";
    for (char c : body) {
      indented += c;
      if (c == '\n') indented += "    ";
    }
    out += indented + (i < 2 ? ",\n" : "\n");
  }
  out += std::string("  ],\n  \"passed\": ") + (all ? "true" : "false") + "\n}\n";
  Output o;
  o.out = out;
  o.exit_code = all ? 0 : 3;
  return o;
}

Output cmd_solvable(const RunConfig& cfg, const std::vector<Mat2>& pieces) {
  check_config(cfg);
  if (pieces.empty()) throw Error(ErrorCode::InvalidArgument, "need at least one --matrix");
  const Hull hull(kset_of(cfg));
  Output o;
  o.out = "piece,solvable,reason\n";
  bool all = true;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const SolvabilityVerdict v = check_solvable(pieces[i], hull, cfg.margin_tol);
    all = all && v.solvable;
    o.out += std::to_string(i) + "," + (v.solvable ? "true" : "false") + "," + std::string(to_string(v.reason)) + "\n";
  }
  o.exit_code = all ? 0 : 3;
  return o;
}

}  // namespace rcohull::cli
