#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rcohull/rcohull.hpp"

namespace rcohull::cli {

struct RunConfig {
  std::vector<KPoint> k_points;
  double margin_tol = kDefaultMarginTol;
  double leaf_tol = 1e-7;
  double bisection_tol = 1e-12;
  std::optional<double> x_max;
  std::optional<double> y_max;
  int resolution = 101;
  std::uint64_t seed = 1;
  std::size_t samples = 1000;
};

/// {k: [[a, b], ...], tol: {margin, leaf, bisection}, grid: {x_max, y_max,
/// resolution}, seed, samples}. Throws Error(ParseError / InvalidArgument).
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);
void check_config(const RunConfig& cfg);

/// "a,b,c,d" row-major.
Mat2 parse_matrix(std::string_view text);

struct Output {
  int exit_code = 0;
  std::string out;
  std::string err;
};

int exit_code_for(ErrorCode code);

Output cmd_sigma(const RunConfig& cfg);
Output cmd_grid(const RunConfig& cfg);
Output cmd_laminate(const RunConfig& cfg, const Mat2& matrix);
Output cmd_approx(const RunConfig& cfg, double delta);
Output cmd_solvable(const RunConfig& cfg, const std::vector<Mat2>& pieces);

/// Runs f and turns library errors into exit codes 2, 3 or 4.
template <class F>
Output guarded(F f) {
  try {
    return f();
  } catch (const Error& e) {
    return {exit_code_for(e.code()), "", std::string(to_string(e.code())) + ": " + e.what() + "\n"};
  }
}

}  // namespace rcohull::cli
