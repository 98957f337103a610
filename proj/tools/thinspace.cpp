#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "thinspace/cli.hpp"

namespace {

using thinspace::Command;
using thinspace::OutputFormat;
using thinspace::RunConfig;

void add_input(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--graph", cfg.graph, "graph JSON: {\"vertices\": [...], \"edges\": [[u, v, length], ...]}");
  sub->add_option("--points", cfg.points, "CSV point cloud, turned into a k-nearest-neighbour graph");
  sub->add_option("--knn", cfg.knn, "neighbours per point for --points")->capture_default_str();
}

void add_thin(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--t-step", cfg.t_step, "grid step along segments (default D/4)");
  sub->add_option("--tol", cfg.tol, "fiber slack (default: longest edge)");
  sub->add_option("--budget", cfg.budget, "check at most this many segments");
  sub->add_flag("!--no-sampling", cfg.allow_sampling, "fail instead of sampling when over budget");
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"thinspace: thinness, skeletons and Urysohn maps of finite geodesic spaces; curvature integrals"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--seed", cfg.seed, "seed for every random choice")->capture_default_str();
  app.add_option("--threads", cfg.threads, "worker cap (default: THINSPACE_THREADS, then all cores)");
  app.add_option("-o,--output", cfg.output, "write the report here instead of stdout");
  std::string format;
  app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  auto* thin = app.add_subcommand("thin-check", "test (R, D)-thinness; exit 2 with a witness on failure");
  add_input(thin, cfg);
  thin->add_option("--R", cfg.R)->required();
  thin->add_option("--D", cfg.D)->required();
  add_thin(thin, cfg);
  thin->callback([&] { cfg.command = Command::ThinCheck; });

  auto* profile = app.add_subcommand("profile", "least passing D for each R");
  add_input(profile, cfg);
  profile->add_option("--R", cfg.R_grid)->required()->delimiter(',');
  profile->add_option("--D", cfg.D_grid)->required()->delimiter(',');
  add_thin(profile, cfg);
  profile->callback([&] { cfg.command = Command::Profile; });

  auto* skeleton = app.add_subcommand("skeleton", "segment or circle skeleton of a thin space");
  add_input(skeleton, cfg);
  skeleton->add_option("--R", cfg.R)->required();
  skeleton->add_option("--D", cfg.D)->required();
  add_thin(skeleton, cfg);
  skeleton->add_flag("--double-sweep", cfg.double_sweep, "approximate the longest segment by double sweep");
  skeleton->callback([&] { cfg.command = Command::Skeleton; });

  auto* urysohn = app.add_subcommand("urysohn", "1-Lipschitz map to a line or circle with fiber audit");
  add_input(urysohn, cfg);
  urysohn->add_option("--skeleton", cfg.skeleton, "skeleton JSON from the skeleton command")->required();
  urysohn->add_option("--R", cfg.R, "scale (default: the skeleton's R)");
  urysohn->add_option("--bin", cfg.bin, "fiber bin width (default R/10)");
  urysohn->add_option("--csv", cfg.csv, "also write vertex,value CSV here");
  urysohn->callback([&] { cfg.command = Command::Urysohn; });

  auto* curvature = app.add_subcommand("curvature", "curvature functionals on model manifolds");
  curvature->require_subcommand(1);
  auto* scan = curvature->add_subcommand("scan", "F(r) = ball average of 0 v (r^{2-alpha} R_k) ^ L");
  scan->add_option("--family", cfg.family)
      ->check(CLI::IsMember({"sphere", "paraboloid", "product_sphere_flat", "flat", "capped_cylinder"}))
      ->capture_default_str();
  scan->add_option("--dim", cfg.dim, "dimension for sphere and flat")->capture_default_str();
  scan->add_option("--rho", cfg.rho, "radius for sphere, product, capped_cylinder")->capture_default_str();
  scan->add_option("--flat-dim", cfg.flat_dim, "flat factor dimension for product_sphere_flat")->capture_default_str();
  scan->add_option("--height", cfg.height, "tube length for capped_cylinder")->capture_default_str();
  scan->add_option("--base", cfg.base_point, "chart coordinates of the centre")->delimiter(',');
  scan->add_option("--k", cfg.k)->capture_default_str();
  scan->add_option("--alpha", cfg.alpha)->capture_default_str();
  scan->add_option("--L", cfg.L)->capture_default_str();
  scan->add_option("--r", cfg.r_grid, "increasing radii")->required()->delimiter(',');
  scan->add_option("--method", cfg.method)->check(CLI::IsMember({"quadrature", "monte-carlo"}))->capture_default_str();
  scan->add_option("--samples", cfg.samples, "Monte-Carlo samples per ball")->capture_default_str();
  scan->callback([&] { cfg.command = Command::CurvatureScan; });
  auto* l14 = curvature->add_subcommand("l14", "random search for violations of the eigen-weight inequality");
  l14->add_option("--n", cfg.n)->capture_default_str();
  l14->add_option("--k", cfg.k)->capture_default_str();
  l14->add_option("--trials", cfg.trials)->capture_default_str();
  l14->add_option("--eps", cfg.eps)->capture_default_str();
  l14->add_option("--c", cfg.c)->capture_default_str();
  l14->add_option("--c1", cfg.c1)->capture_default_str();
  l14->add_option("--eps-prime", cfg.eps_prime)->capture_default_str();
  l14->callback([&] { cfg.command = Command::CurvatureL14; });

  auto* volume = app.add_subcommand("volume-growth", "ball sizes |B_t(base)| with a linear fit");
  add_input(volume, cfg);
  volume->add_option("--base", cfg.base, "base vertex id (default: first vertex)");
  volume->add_option("--t", cfg.t_grid, "increasing radii")->delimiter(',');
  volume->add_option("--t-max", cfg.t_max, "radii t-step, 2 t-step, ..., t-max");
  volume->add_option("--t-step", cfg.t_step_volume)->capture_default_str();
  volume->callback([&] { cfg.command = Command::VolumeGrowth; });

  auto* replay = app.add_subcommand("replay", "re-verify the witness in a thin-check or skeleton report");
  replay->add_option("report", cfg.report)->required();
  replay->callback([&] { cfg.command = Command::Replay; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "thinspace: E_USAGE: " << e.what() << "\n";
    std::cout << thinspace::error_json("usage", "E_USAGE", e.what()).dump(2) << "\n";
    return 1;
  }
  if (format == "json") cfg.format = OutputFormat::Json;
  if (format == "csv") cfg.format = OutputFormat::Csv;
  return thinspace::run(cfg, std::cout, std::cerr);
}
