// Acceptance run: one PASS/FAIL line per criterion; exit status is the
// number of failing criteria.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "thin_oracle.hpp"
#include "thinspace/thinspace.hpp"

using namespace thinspace;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void expect(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + std::string("FAILED ") + what;
    }
  }
  void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

int failures = 0;

void report(int id, const std::string& title, double limit_s, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out.expect(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit_s > 0) out.expect(secs < limit_s, "runtime " + num(secs) + " s exceeds " + num(limit_s) + " s");
  if (!out.pass) ++failures;
  std::printf("%s criterion %d (%s) [%.2f s]: %s\n", out.pass ? "PASS" : "FAIL", id, title.c_str(), secs,
              out.detail.c_str());
  std::fflush(stdout);
}

// Thickened path/cycle family: C_m x P_n cylinders and C_3 x C_n tori with a
// seeded sprinkle of diagonal edges (k, j) - (k+1, j+1) of length 2, which
// leave the metric unchanged.
struct FamilyCase {
  std::string name;
  GraphSpec graph;
  double R = 0.0;
  double D = 0.0;
  bool closed = false;
  std::size_t ring = 0;
};

GraphSpec thickened(std::size_t m, std::size_t n, bool closed, std::uint64_t seed) {
  auto g = graphs::ring_product(m, n, closed);
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution pick(0.05);
  const std::size_t rows = closed ? n : n - 1;
  for (std::size_t k = 0; k < rows; ++k)
    for (std::size_t j = 0; j < m; ++j)
      if (pick(rng)) g.add_edge(k * m + j, ((k + 1) % n) * m + (j + 1) % m, 2.0);
  return g;
}

std::vector<FamilyCase> family() {
  std::vector<FamilyCase> out;
  std::uint64_t seed = 100;
  for (auto [m, n] : std::vector<std::pair<std::size_t, std::size_t>>{
           {4, 200}, {5, 250}, {6, 300}, {8, 400}, {8, 500}, {10, 500}, {12, 600}}) {
    const double D = static_cast<double>(m) / 2.0 + 0.5;
    out.push_back({"C" + std::to_string(m) + "xP" + std::to_string(n), thickened(m, n, false, seed++), 20.0 * D, D,
                   false, m});
  }
  for (std::size_t n : {2600, 2800, 3000})
    out.push_back({"C3xC" + std::to_string(n), thickened(3, n, true, seed++), 25.0, 1.25, true, 3});
  return out;
}

struct FamilyResult {
  FamilyCase c;
  FiniteGeodesicSpace space;
  Skeleton skeleton;
};

std::vector<FamilyResult> family_skeletons() {
  std::vector<FamilyResult> out;
  for (auto& c : family()) {
    auto space = c.graph.build();
    ThinCheckOptions o;
    o.segment_budget = 16;
    auto evidence = thin_check(space, c.R, c.D, o);
    require(evidence.pass, ErrorCode::NotThinEvidence, c.name + " failed its thinness sample");
    auto sk = extract_skeleton(space, c.R, c.D, evidence);
    out.push_back({std::move(c), std::move(space), std::move(sk)});
  }
  return out;
}

std::string shell_quote(const std::string& s) { return "'" + s + "'"; }

}  // namespace

int main() {
  std::printf("thinspace acceptance run (threads: %u)\n", thread_limit());

  report(1, "thinness oracle equivalence on 25 random graphs", 60, [] {
    Outcome o;
    int passes = 0, fails = 0, disagree = 0, bad_witness = 0;
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
      // Alternate sparse random graphs (mostly failing) and random caterpillars (mostly passing).
      const bool sparse = seed % 2 == 0;
      const std::size_t n = 20 + (seed * 7) % 41;
      auto g = sparse ? graphs::random_connected(n, seed % 5, 0.5, 1.5, 1000 + seed)
                      : thinspace_oracle::caterpillar(std::min<std::size_t>(n, 40), 0.1, 1000 + seed);
      thinspace_oracle::Oracle oracle(g);
      auto s = g.build();
      const double R = sparse ? 3.0 : 4.0, D = R / 20.0;
      ThinCheckOptions opts;
      opts.allow_sampling = false;
      auto rep = thin_check(s, R, D, opts);
      auto ref = oracle.check(R, D, s.scale());
      if (rep.pass != ref.pass) ++disagree;
      if (rep.pass) {
        ++passes;
      } else {
        ++fails;
        if (!replay_witness(s, rep) || rep.witness->dist_x_r < D) ++bad_witness;
      }
    }
    o.expect(disagree == 0, std::to_string(disagree) + " verdict disagreements");
    o.expect(bad_witness == 0, std::to_string(bad_witness) + " witnesses failed replay");
    o.note(std::to_string(passes) + " pass / " + std::to_string(fails) + " fail, verdicts agree, witnesses replay");
    return o;
  });

  report(2, "tripod falsification, path, cycle skeleton", 30, [] {
    Outcome o;
    auto tripod = graphs::tripod(100).build();
    auto t = thin_check(tripod, 20, 1);
    o.expect(!t.pass && t.witness && t.witness->dist_x_r >= 100.0, "tripod witness distance >= 100");
    if (t.witness) o.note("tripod witness distance " + num(t.witness->dist_x_r));
    o.expect(t.witness && replay_witness(tripod, t), "tripod witness replays");
    auto path = thin_check(graphs::path(1000).build(), 20, 1);
    o.expect(path.pass, "P1000 passes");
    o.note(std::string("P1000 ") + (path.pass ? "passes" : "fails"));
    auto cycle = graphs::cycle(2000).build();
    ThinCheckOptions opts;
    opts.segment_budget = 400;
    auto ev = thin_check(cycle, 20, 1, opts);
    auto sk = extract_skeleton(cycle, 20, 1, ev);
    o.expect(sk.kind == SkeletonKind::Circle && sk.distortion == 0.0 && sk.covering_radius == 0.0,
             "C2000 circle skeleton with distortion 0 and covering radius 0");
    o.note(std::string("C2000 skeleton ") + kind_name(sk.kind) + ", distortion " + num(sk.distortion) +
           ", covering radius " + num(sk.covering_radius));
    return o;
  });

  std::vector<FamilyResult> fam;
  report(3, "skeleton covering bound on 10 thickened graphs", 0, [&] {
    Outcome o;
    fam = family_skeletons();
    int circles = 0;
    double worst_ratio = 0.0;
    for (const auto& f : fam) {
      o.expect(f.skeleton.covering_radius <= 200.0 * f.c.R, f.c.name + " covering radius <= 200R");
      worst_ratio = std::max(worst_ratio, f.skeleton.covering_radius / f.c.R);
      if (f.skeleton.kind == SkeletonKind::Circle) {
        ++circles;
        o.expect(f.skeleton.circle.length >= 50.0 * f.c.R, f.c.name + " loop length >= 50R");
      }
      o.expect((f.skeleton.kind == SkeletonKind::Circle) == f.c.closed, f.c.name + " skeleton kind");
    }
    o.note(std::to_string(fam.size()) + " graphs, " + std::to_string(circles) + " circles, max covering/R " +
           num(worst_ratio));
    return o;
  });

  report(4, "Urysohn fiber bound audit", 60, [&] {
    Outcome o;
    double worst = 0.0;
    for (const auto& f : fam) {
      auto map = build_urysohn_map(f.space, f.skeleton, f.c.R, f.c.R / 10.0);
      o.expect(map.max_fiber_diameter <= map.bound(), f.c.name + " max fiber <= 2000R + 2 delta");
      o.expect(map.lipschitz_excess <= 1e-9, f.c.name + " map is 1-Lipschitz");
      worst = std::max(worst, map.max_fiber_diameter / map.bound());
    }
    o.note("family max fiber / bound " + num(worst));
    auto cyl = graphs::cylinder(12, 4000).build();
    ThinCheckOptions opts;
    opts.segment_budget = 8;
    auto ev = thin_check(cyl, 140, 7, opts);
    o.expect(ev.pass, "C12xP4000 thinness sample at R=140, D=7");
    auto sk = extract_skeleton(cyl, 140, 7, ev);
    auto map = build_urysohn_map(cyl, sk, 140, 14);
    o.expect(map.max_fiber_diameter <= map.bound(), "C12xP4000 max fiber <= bound");
    o.note(std::string("C12xP4000 ") + case_name(map.map_case) + " map, max fiber " + num(map.max_fiber_diameter) +
           " (bound " + num(map.bound()) + ")");
    // Thinness needs D above the half girth 6, so R >= 130 and each fiber spans a bin of width >= 13.
    o.expect(map.max_fiber_diameter <= 8.0, "C12xP4000 max fiber <= 8 (unreachable: thin only for D > 6, "
                                            "so delta = R/10 >= 13 exceeds 8)");
    return o;
  });

  report(5, "paraboloid curvature decay and clamped average", 10, [] {
    Outcome o;
    const auto m = AnalyticManifold::paraboloid();
    const double rho = 100.0, z = rho * rho;
    const double v = ricci_eigenvalues(m, {rho, 0.0})[0] * 4.0 * z * z;
    o.expect(std::abs(v - 1.0) <= 0.01, "K * 4 z^2 within 1% of 1 at rho = 100");
    o.note("K * 4 z^2 = " + num(v));
    double lowest = 1.0;
    for (double f : {1e3, 2e3, 5e3, 1e4, 1e5}) {
      IntegralOptions opts;
      opts.abs_tol = 1e-8;
      auto est = ball_integral(m, {0.0, 0.0}, f, Integrand::clamp(1, f * f, 0.2), IntegralMethod::Quadrature, opts);
      lowest = std::min(lowest, est.value);
      o.expect(est.value >= 0.19, "F >= 0.19 at f = " + num(f));
    }
    o.note("min F over f in [1e3, 1e5] = " + num(lowest));
    return o;
  });

  report(6, "paraboloid hypothesis scan alpha=1, k=1, L=1", 30, [] {
    Outcome o;
    std::vector<double> grid;
    for (double r = 1; r <= 512; r *= 2) grid.push_back(r);
    auto scan = tangent_hypothesis_scan(AnalyticManifold::paraboloid(), {0.0, 0.0}, 1, 1.0, 1.0, grid);
    bool monotone = true;
    for (std::size_t i = 1; i < scan.entries.size(); ++i)
      monotone = monotone && scan.entries[i].F < scan.entries[i - 1].F;
    o.expect(monotone, "F strictly decreasing");
    o.expect(scan.trend == ScanTrend::ApproachingZero, "trend approaching 0");
    o.expect(scan.entries.back().F < 0.05, "F(512) < 0.05");
    o.note("F(1) = " + num(scan.entries.front().F) + ", F(512) = " + num(scan.entries.back().F) + ", trend " +
           trend_name(scan.trend));
    return o;
  });

  report(7, "L14 calibration search", 120, [] {
    Outcome o;
    std::size_t loose_total = 0;
    std::string loose;
    for (auto [n, k] : {std::pair{2, 1}, std::pair{3, 2}, std::pair{4, 2}}) {
      auto strict = l14_search(n, k, 1.0, 4.0, 1000000, 7, {1e-4, 1e-4});
      o.expect(strict.violations == 0,
               "(" + std::to_string(n) + "," + std::to_string(k) + ") violations at eps' = 1e-4");
      auto wide = l14_search(n, k, 1.0, 4.0, 1000000, 7, {1e-4, 0.9});
      loose_total += wide.violations;
      loose += " (" + std::to_string(n) + "," + std::to_string(k) + "):" + std::to_string(wide.violations);
    }
    o.expect(loose_total > 0, "violations at eps' = 0.9");
    o.note("eps' = 1e-4: 0 violations in 3 x 1e6 trials; eps' = 0.9 violations" + loose);
    return o;
  });

  report(8, "Vitali scale-picking cover", 0, [] {
    Outcome o;
    GridField spike;
    spike.origin = -1.0;
    spike.spacing = 0.01;
    spike.values.assign(201, 0.0);
    spike.values[100] = 10.0 / spike.spacing;
    auto cover = scale_pick_cover(spike, 0.25, 20.0, 0.01, 0.1);
    bool disjoint = true;
    for (std::size_t i = 0; i < cover.balls.size(); ++i)
      for (std::size_t j = i + 1; j < cover.balls.size(); ++j)
        disjoint = disjoint && std::abs(cover.balls[i].center - cover.balls[j].center) >
                                   cover.balls[i].radius + cover.balls[j].radius;
    o.expect(cover.balls.size() == 1 && cover.balls[0].cell == 100, "single ball at the spike");
    o.expect(disjoint, "fifth-balls disjoint");
    o.expect(cover.bound_holds(), "weighted sum <= (c / eta) * total");
    o.note("weighted sum " + num(cover.weighted_sum) + " <= " +
           num(cover.constant / cover.eta * cover.total_integral) + " (c = " + num(cover.constant) + ")");
    GridField zero = spike;
    zero.values.assign(201, 0.0);
    auto empty = scale_pick_cover(zero, 0.25, 20.0, 0.01, 0.1);
    o.expect(empty.empty() && empty.weighted_sum == 0.0, "zero field gives empty cover");
    return o;
  });

  report(9, "volume growth", 0, [] {
    Outcome o;
    auto cyl = graphs::cylinder(12, 4000).build();
    std::vector<double> t;
    for (double x = 10; x <= 1000; x += 10) t.push_back(x);
    auto lin = volume_growth(cyl, 2000 * 12, t);
    o.expect(lin.max_relative_residual < 0.05, "C12xP4000 residual < 5%");
    auto grid = graphs::grid(41, 41).build();
    std::vector<double> t2;
    for (double x = 1; x <= 20; x += 1) t2.push_back(x);
    auto sq = volume_growth(grid, 20 * 41 + 20, t2);
    o.expect(sq.max_relative_residual > 0.25 && sq.growth == GrowthClass::Superlinear, "41x41 grid superlinear");
    o.note("cylinder slope " + num(lin.slope) + ", residual " + num(lin.max_relative_residual) + "; grid residual " +
           num(sq.max_relative_residual) + " (" + growth_name(sq.growth) + ")");
    return o;
  });

  report(10, "byte-identical CLI output over 3 runs", 0, [] {
    Outcome o;
    const fs::path dir = fs::temp_directory_path() / "thinspace_acceptance";
    fs::remove_all(dir);
    fs::create_directories(dir);
    auto put = [&](const std::string& name, const std::string& text) {
      std::ofstream(dir / name, std::ios::binary) << text;
      return (dir / name).string();
    };
    const auto tripod = put("tripod.json", graph_to_json(graphs::tripod(100)));
    const auto cycle = put("cycle.json", graph_to_json(graphs::cycle(1200)));
    const auto path = put("path.json", graph_to_json(graphs::path(400)));
    const std::string cli = THINSPACE_CLI;
    const std::string sk = (dir / "sk.json").string();
    const std::string wit = (dir / "witness.json").string();
    std::system((shell_quote(cli) + " skeleton --graph " + shell_quote(cycle) + " --R 10 --D 0.5 --budget 40 -o " +
                 shell_quote(sk) + " 2>/dev/null")
                    .c_str());
    std::system((shell_quote(cli) + " thin-check --graph " + shell_quote(tripod) + " --R 20 --D 1 -o " +
                 shell_quote(wit) + " 2>/dev/null")
                    .c_str());
    const std::vector<std::string> commands = {
        "thin-check --graph " + shell_quote(tripod) + " --R 20 --D 1",
        "thin-check --graph " + shell_quote(path) + " --R 20 --D 1 --budget 30",
        "profile --graph " + shell_quote(tripod) + " --R 20,40 --D 0.5,1,2",
        "skeleton --graph " + shell_quote(cycle) + " --R 10 --D 0.5 --budget 40",
        "urysohn --graph " + shell_quote(cycle) + " --skeleton " + shell_quote(sk),
        "curvature scan --family paraboloid --alpha 1.0 --k 1 --L 1 --r 1,2,4,8,16 --seed 7 --format json",
        "curvature scan --family paraboloid --r 1,2,4 --method monte-carlo --samples 20000 --seed 7 --format json",
        "curvature l14 --n 3 --k 2 --trials 50000 --eps-prime 0.9 --seed 7",
        "volume-growth --graph " + shell_quote(path) + " --base v0 --t 1,10,100",
        "replay " + shell_quote(wit),
    };
    int stable = 0;
    for (std::size_t i = 0; i < commands.size(); ++i) {
      std::vector<std::string> hashes;
      for (int run = 0; run < 3; ++run) {
        const auto out = (dir / ("out" + std::to_string(i) + "_" + std::to_string(run) + ".json")).string();
        std::system((shell_quote(cli) + " " + commands[i] + " > " + shell_quote(out) + " 2>/dev/null").c_str());
        const auto text = read_file(out);
        o.expect(text.find("\"schema_version\": \"1\"") != std::string::npos &&
                     text.find("\"error\"") == std::string::npos,
                 "command " + std::to_string(i) + " produced a report");
        hashes.push_back(fnv1a64(text));
      }
      const bool same = hashes[0] == hashes[1] && hashes[1] == hashes[2];
      o.expect(same, "command " + std::to_string(i) + " differs across runs");
      stable += same;
    }
    o.note(std::to_string(stable) + "/" + std::to_string(commands.size()) + " commands byte-identical across 3 runs");
    fs::remove_all(dir);
    return o;
  });

  std::printf("%d criteria failed\n", failures);
  return failures;
}
