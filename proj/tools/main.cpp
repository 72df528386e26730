#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commands.hpp"

using namespace rcohull;
using namespace rcohull::cli;

namespace {

struct Flags {
  std::string k_path;
  std::string out_path;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::optional<int> resolution;
  std::optional<std::size_t> samples;
  double delta = 0.0;
  std::vector<std::string> matrices;
};

int finish(const Output& o, const std::string& out_path) {
  std::cerr << o.err;
  if (out_path.empty()) {
    std::cout << o.out;
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) {
      std::cerr << "cannot write " << out_path << "\n";
      return 2;
    }
    f << o.out;
  }
  return o.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rank-one convex hulls of isotropic sets of 2x2 matrices"};
  app.require_subcommand(1);
  Flags flags;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--k", flags.k_path, "Config file with the K points")->required();
    sub->add_option("--out", flags.out_path, "Output file (default stdout)");
    sub->add_option("--seed", flags.seed, "RNG seed");
    sub->add_option("--tol", flags.tol, "Margin tolerance");
    sub->add_option("--resolution", flags.resolution, "Grid points per axis");
    sub->add_option("--samples", flags.samples, "Samples for the approximation checks");
  };

  auto* sigma_cmd = app.add_subcommand("sigma", "Tabulate the hull boundary sigma(x)");
  common(sigma_cmd);
  auto* grid_cmd = app.add_subcommand("grid", "Classify a grid of singular-value pairs");
  common(grid_cmd);
  auto* lam_cmd = app.add_subcommand("laminate", "Build and verify a laminate certificate");
  common(lam_cmd);
  lam_cmd->add_option("--matrix", flags.matrices, "a,b,c,d row-major")->required()->expected(1);
  auto* approx_cmd = app.add_subcommand("approx", "Check the approximation property for E_delta");
  common(approx_cmd);
  approx_cmd->add_option("--delta", flags.delta, "Shift delta")->required();
  auto* solv_cmd = app.add_subcommand("solvable", "Decide solvability for piecewise affine data");
  common(solv_cmd);
  solv_cmd->add_option("--matrix", flags.matrices, "Gradient of one piece, a,b,c,d")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  const Output o = guarded([&]() -> Output {
    RunConfig cfg = load_config(flags.k_path);
    if (flags.seed) cfg.seed = *flags.seed;
    if (flags.tol) cfg.margin_tol = *flags.tol;
    if (flags.resolution) cfg.resolution = *flags.resolution;
    if (flags.samples) cfg.samples = *flags.samples;
    std::vector<Mat2> mats;
    for (const auto& m : flags.matrices) mats.push_back(parse_matrix(m));

    if (app.got_subcommand(sigma_cmd)) return cmd_sigma(cfg);
    if (app.got_subcommand(grid_cmd)) return cmd_grid(cfg);
    if (app.got_subcommand(lam_cmd)) return cmd_laminate(cfg, mats.front());
    if (app.got_subcommand(approx_cmd)) return cmd_approx(cfg, flags.delta);
    return cmd_solvable(cfg, mats);
  });
  return finish(o, flags.out_path);
}
