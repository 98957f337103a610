#pragma once

// Command pipelines behind the `thinspace` tool. Every run is a pure
// function of RunConfig and the input files.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "thinspace/curvature.hpp"
#include "thinspace/io.hpp"
#include "thinspace/parallel.hpp"
#include "thinspace/skeleton.hpp"
#include "thinspace/thinness.hpp"
#include "thinspace/urysohn.hpp"
#include "thinspace/volume.hpp"

namespace thinspace {

enum class Command { ThinCheck, Profile, Skeleton, Urysohn, CurvatureScan, CurvatureL14, VolumeGrowth, Replay };

inline const char* command_name(Command c) {
  switch (c) {
    case Command::ThinCheck: return "thin-check";
    case Command::Profile: return "profile";
    case Command::Skeleton: return "skeleton";
    case Command::Urysohn: return "urysohn";
    case Command::CurvatureScan: return "curvature scan";
    case Command::CurvatureL14: return "curvature l14";
    case Command::VolumeGrowth: return "volume-growth";
    case Command::Replay: return "replay";
  }
  return "unknown";
}

enum class OutputFormat { Json, Csv };

struct RunConfig {
  Command command = Command::ThinCheck;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::string output;  // empty: the caller's stream
  std::optional<OutputFormat> format;

  // Graph inputs.
  std::string graph;
  std::string points;
  std::size_t knn = 8;
  std::string skeleton;
  std::string report;  // replay

  // Thinness and skeleton.
  double R = 0.0;
  double D = 0.0;
  std::vector<double> R_grid;
  std::vector<double> D_grid;
  double t_step = 0.0;
  double tol = -1.0;
  std::optional<std::size_t> budget;
  bool allow_sampling = true;
  bool double_sweep = false;

  // Urysohn.
  std::optional<double> bin;
  std::string csv;

  // Volume growth.
  std::string base;
  std::vector<double> t_grid;
  double t_max = 0.0;
  double t_step_volume = 1.0;

  // Curvature.
  std::string family = "paraboloid";
  int dim = 2;
  double rho = 1.0;
  int flat_dim = 1;
  double height = 1.0;
  std::vector<double> base_point;
  int k = 1;
  double alpha = 1.0;
  double L = 1.0;
  std::vector<double> r_grid;
  std::string method = "quadrature";
  std::size_t samples = std::size_t{1} << 16;
  int n = 3;
  std::size_t trials = 1000000;
  double eps = 1.0;
  double c = 4.0;
  double c1 = 1e-4;
  double eps_prime = 1e-4;
};

namespace detail {

inline InputSource source_of(const RunConfig& cfg) {
  require(cfg.graph.empty() != cfg.points.empty(), ErrorCode::Usage, "give exactly one of --graph or --points");
  InputSource s;
  if (!cfg.graph.empty()) {
    s.kind = "graph";
    s.path = cfg.graph;
  } else {
    s.kind = "points";
    s.path = cfg.points;
    s.knn = cfg.knn;
  }
  return s;
}

inline Json header(const RunConfig& cfg) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command_name(cfg.command);
  j["seed"] = cfg.seed;
  return j;
}

inline AnalyticManifold manifold_of(const RunConfig& cfg) {
  if (cfg.family == "sphere") return AnalyticManifold::sphere(cfg.dim, cfg.rho);
  if (cfg.family == "paraboloid") return AnalyticManifold::paraboloid();
  if (cfg.family == "product_sphere_flat") return AnalyticManifold::product_sphere_flat(cfg.rho, cfg.flat_dim);
  if (cfg.family == "flat") return AnalyticManifold::flat(cfg.dim);
  if (cfg.family == "capped_cylinder") return AnalyticManifold::capped_cylinder(cfg.rho, cfg.height);
  throw Error(ErrorCode::Usage, "unknown family '" + cfg.family + "'");
}

/// North pole, apex, origin or bottom pole.
inline ChartPoint default_base(const AnalyticManifold& m) {
  switch (m.family) {
    case ManifoldFamily::Sphere: {
      ChartPoint p(static_cast<std::size_t>(m.n) + 1, 0.0);
      p.back() = m.rho;
      return p;
    }
    case ManifoldFamily::ProductSphereFlat: {
      ChartPoint p(3 + static_cast<std::size_t>(m.d), 0.0);
      p[2] = m.rho;
      return p;
    }
    case ManifoldFamily::Flat: return ChartPoint(static_cast<std::size_t>(m.n), 0.0);
    default: return {0.0, 0.0};
  }
}

inline Json manifold_json(const AnalyticManifold& m) {
  Json j;
  j["family"] = family_name(m.family);
  j["n"] = m.n;
  if (m.family == ManifoldFamily::Sphere || m.family == ManifoldFamily::ProductSphereFlat ||
      m.family == ManifoldFamily::CappedCylinder)
    j["rho"] = m.rho;
  if (m.family == ManifoldFamily::ProductSphereFlat) j["d"] = m.d;
  if (m.family == ManifoldFamily::CappedCylinder) j["h"] = m.h;
  return j;
}

struct Emitted {
  std::string text;
  int exit_code = 0;
};

inline ThinCheckOptions thin_options(const RunConfig& cfg) {
  ThinCheckOptions o;
  o.t_step = cfg.t_step;
  o.tol = cfg.tol;
  o.segment_budget = cfg.budget;
  o.allow_sampling = cfg.allow_sampling;
  return o;
}

inline Json thin_parameters(const RunConfig& cfg) {
  Json p;
  p["R"] = cfg.R;
  p["D"] = cfg.D;
  p["t_step"] = cfg.t_step;
  p["tol"] = cfg.tol;
  p["segment_budget"] = cfg.budget ? Json(*cfg.budget) : Json(nullptr);
  p["allow_sampling"] = cfg.allow_sampling;
  return p;
}

inline Emitted run_thin_check(const RunConfig& cfg) {
  auto input = load_input(source_of(cfg));
  auto space = input.spec.build();
  auto report = thin_check(space, cfg.R, cfg.D, thin_options(cfg));
  Json j = header(cfg);
  j["input"] = source_json(input.source);
  j["parameters"] = thin_parameters(cfg);
  j["report"] = thin_report_json(space, report);
  return {j.dump(2) + "\n", report.pass ? 0 : 2};
}

inline Emitted run_profile(const RunConfig& cfg) {
  auto input = load_input(source_of(cfg));
  auto space = input.spec.build();
  auto profile = thinness_profile(space, cfg.R_grid, cfg.D_grid, thin_options(cfg));
  if (cfg.format == OutputFormat::Csv) {
    std::string out = "R,D_min\n";
    for (const auto& e : profile.entries)
      out += format_double(e.R) + "," + (e.D_min ? format_double(*e.D_min) : std::string()) + "\n";
    return {out, 0};
  }
  Json j = header(cfg);
  j["input"] = source_json(input.source);
  j["parameters"] = Json{{"R_grid", cfg.R_grid}, {"D_grid", cfg.D_grid}, {"t_step", cfg.t_step}, {"tol", cfg.tol}};
  Json entries = Json::array();
  for (const auto& e : profile.entries) {
    Json ej;
    ej["R"] = e.R;
    ej["D_min"] = e.D_min ? Json(*e.D_min) : Json(nullptr);
    Json ev = Json::array();
    for (const auto& r : e.evaluated) ev.push_back(Json{{"D", r.D}, {"verdict", r.pass ? "pass" : "fail"}});
    ej["evaluated"] = std::move(ev);
    entries.push_back(std::move(ej));
  }
  j["entries"] = std::move(entries);
  return {j.dump(2) + "\n", 0};
}

inline Emitted run_skeleton(const RunConfig& cfg) {
  auto input = load_input(source_of(cfg));
  auto space = input.spec.build();
  auto evidence = thin_check(space, cfg.R, cfg.D, thin_options(cfg));
  Json j = header(cfg);
  j["input"] = source_json(input.source);
  j["parameters"] = thin_parameters(cfg);
  j["parameters"]["search"] = cfg.double_sweep ? "double-sweep" : "exhaustive";
  j["evidence"] = thin_report_json(space, evidence);
  if (!evidence.pass) {
    j["skeleton"] = nullptr;
    return {j.dump(2) + "\n", 2};
  }
  SkeletonOptions so;
  so.search = cfg.double_sweep ? SegmentSearch::DoubleSweep : SegmentSearch::Exhaustive;
  auto sk = extract_skeleton(space, cfg.R, cfg.D, evidence, so);
  j["skeleton"] = skeleton_json(space, sk);
  return {j.dump(2) + "\n", 0};
}

inline Emitted run_urysohn(const RunConfig& cfg) {
  require(!cfg.skeleton.empty(), ErrorCode::Usage, "urysohn needs --skeleton");
  auto input = load_input(source_of(cfg));
  auto space = input.spec.build();
  Json doc = parse_json_text(read_file(cfg.skeleton), "skeleton");
  // Accept either a bare skeleton or a full `skeleton` command report.
  const Json& skj = doc.contains("skeleton") ? doc["skeleton"] : doc;
  require(!skj.is_null(), ErrorCode::SkeletonMismatch, "skeleton report carries no skeleton");
  auto sk = skeleton_from_json(space, skj);
  const double R = cfg.R > 0.0 ? cfg.R : sk.R;
  const double delta = cfg.bin ? *cfg.bin : R / 10.0;
  auto map = build_urysohn_map(space, sk, R, delta);
  if (!cfg.csv.empty()) {
    std::ofstream f(cfg.csv, std::ios::binary);
    require(static_cast<bool>(f), ErrorCode::Io, "cannot write '" + cfg.csv + "'");
    f << urysohn_csv(space, map);
  }
  if (cfg.format == OutputFormat::Csv) return {urysohn_csv(space, map), 0};
  Json j = header(cfg);
  j["input"] = source_json(input.source);
  j["skeleton"] = Json{{"path", cfg.skeleton}, {"fnv1a64", fnv1a64(read_file(cfg.skeleton))}, {"kind", kind_name(sk.kind)}};
  j["parameters"] = Json{{"R", R}, {"bin", delta}};
  j["map"] = urysohn_json(space, map);
  return {j.dump(2) + "\n", 0};
}

inline Emitted run_scan(const RunConfig& cfg) {
  auto m = manifold_of(cfg);
  auto base = cfg.base_point.empty() ? default_base(m) : cfg.base_point;
  require(cfg.method == "quadrature" || cfg.method == "monte-carlo", ErrorCode::Usage,
          "--method must be quadrature or monte-carlo");
  const auto method = cfg.method == "quadrature" ? IntegralMethod::Quadrature : IntegralMethod::MonteCarlo;
  IntegralOptions opts;
  opts.seed = cfg.seed;
  opts.samples = cfg.samples;
  auto scan = tangent_hypothesis_scan(m, base, cfg.k, cfg.alpha, cfg.L, cfg.r_grid, method, opts);
  if (cfg.format.value_or(OutputFormat::Csv) == OutputFormat::Csv) return {scan_csv(scan), 0};
  Json j = header(cfg);
  j["manifold"] = manifold_json(m);
  j["parameters"] = Json{{"base", base}, {"k", cfg.k},          {"alpha", cfg.alpha},
                         {"L", cfg.L},   {"method", method_name(method)}, {"r", cfg.r_grid}};
  if (method == IntegralMethod::MonteCarlo) j["parameters"]["samples"] = cfg.samples;
  j["scan"] = scan_json(scan);
  return {j.dump(2) + "\n", 0};
}

inline Emitted run_l14(const RunConfig& cfg) {
  L14SearchOptions o;
  o.c1 = cfg.c1;
  o.eps_prime = cfg.eps_prime;
  auto res = l14_search(cfg.n, cfg.k, cfg.eps, cfg.c, cfg.trials, cfg.seed, o);
  Json j = header(cfg);
  j["parameters"] = Json{{"n", cfg.n},   {"k", cfg.k},   {"eps", cfg.eps},           {"c", cfg.c},
                         {"c1", cfg.c1}, {"eps_prime", cfg.eps_prime}, {"trials", cfg.trials}};
  j["verdict"] = res.violations == 0 ? "no violation" : "violation found";
  j["violations"] = res.violations;
  j["first_trial"] = res.first_trial ? Json(*res.first_trial) : Json(nullptr);
  if (res.counterexample) {
    auto v = l14_verify(*res.counterexample);
    Json ce = eigen_sample_json(*res.counterexample);
    ce["lhs"] = v.lhs;
    ce["rhs"] = v.rhs;
    j["counterexample"] = std::move(ce);
  } else {
    j["counterexample"] = nullptr;
  }
  return {j.dump(2) + "\n", 0};
}

inline Emitted run_volume(const RunConfig& cfg) {
  auto input = load_input(source_of(cfg));
  auto space = input.spec.build();
  const Vertex base = cfg.base.empty() ? Vertex{0} : space.vertex(cfg.base);
  std::vector<double> grid = cfg.t_grid;
  if (grid.empty()) {
    require(cfg.t_max > 0.0 && cfg.t_step_volume > 0.0, ErrorCode::Usage, "give --t or --t-max");
    for (std::size_t i = 1;; ++i) {
      const double t = cfg.t_step_volume * static_cast<double>(i);
      if (t > cfg.t_max * (1.0 + 1e-12)) break;
      grid.push_back(t);
    }
  }
  auto growth = volume_growth(space, base, grid);
  if (cfg.format == OutputFormat::Csv) return {volume_csv(growth), 0};
  Json j = header(cfg);
  j["input"] = source_json(input.source);
  j["parameters"] = Json{{"base", space.id(base)}, {"t", grid}};
  j["growth"] = volume_json(growth);
  return {j.dump(2) + "\n", 0};
}

inline Emitted run_replay(const RunConfig& cfg) {
  require(!cfg.report.empty(), ErrorCode::Usage, "replay needs a report file");
  Json doc = parse_json_text(read_file(cfg.report), "report");
  require(doc.is_object() && doc.contains("input"), ErrorCode::Parse, "report: missing input section");
  const Json& rep = doc.contains("evidence") ? doc["evidence"] : doc.value("report", Json());
  require(rep.is_object(), ErrorCode::Parse, "report: missing thinness report");
  auto source = source_from_json(doc["input"]);
  // Inputs recorded relative to where the report was produced may also sit
  // next to the report file.
  if (!std::filesystem::exists(source.path)) {
    auto sibling = std::filesystem::path(cfg.report).parent_path() / source.path;
    if (std::filesystem::exists(sibling)) source.path = sibling.string();
  }
  auto input = load_input(source);
  auto space = input.spec.build();
  auto report = thin_report_from_json(space, rep);
  require(!report.pass && report.witness.has_value(), ErrorCode::BadParameters, "report carries no witness to replay");
  const std::string recorded = doc["input"].value("fnv1a64", std::string());
  const bool same_input = recorded.empty() || recorded == input.source.hash;
  const bool valid = same_input && replay_witness(space, report);
  Json j = header(cfg);
  j["report"] = cfg.report;
  j["input_matches"] = same_input;
  j["valid"] = valid;
  return {j.dump(2) + "\n", valid ? 0 : 2};
}

inline Emitted dispatch(const RunConfig& cfg) {
  switch (cfg.command) {
    case Command::ThinCheck: return run_thin_check(cfg);
    case Command::Profile: return run_profile(cfg);
    case Command::Skeleton: return run_skeleton(cfg);
    case Command::Urysohn: return run_urysohn(cfg);
    case Command::CurvatureScan: return run_scan(cfg);
    case Command::CurvatureL14: return run_l14(cfg);
    case Command::VolumeGrowth: return run_volume(cfg);
    case Command::Replay: return run_replay(cfg);
  }
  throw Error(ErrorCode::Usage, "unknown command");
}

}  // namespace detail

inline Json error_json(const std::string& command, std::string_view code, const std::string& message) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  j["error"] = Json{{"code", code}, {"message", message}};
  return j;
}

/// Runs one command. Returns 0 on success, 2 on a failing verdict, 1 on any
/// error (an error report goes to the output, the message to `err`).
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  set_thread_limit(cfg.threads);
  std::string text;
  int code = 0;
  try {
    auto emitted = detail::dispatch(cfg);
    text = std::move(emitted.text);
    code = emitted.exit_code;
  } catch (const Error& e) {
    err << "thinspace: " << code_name(e.code()) << ": " << e.what() << "\n";
    text = error_json(command_name(cfg.command), code_name(e.code()), e.what()).dump(2) + "\n";
    code = 1;
  } catch (const std::exception& e) {
    err << "thinspace: E_INTERNAL: " << e.what() << "\n";
    text = error_json(command_name(cfg.command), "E_INTERNAL", e.what()).dump(2) + "\n";
    code = 1;
  }
  if (cfg.output.empty()) {
    out << text;
  } else {
    std::ofstream f(cfg.output, std::ios::binary);
    if (!f) {
      err << "thinspace: E_IO: cannot write '" << cfg.output << "'\n";
      out << text;
      return 1;
    }
    f << text;
  }
  return code;
}

}  // namespace thinspace
