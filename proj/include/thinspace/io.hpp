#pragma once

// File formats: JSON graphs, CSV point clouds (turned into kNN graphs), and
// the JSON/CSV reports written by the command-line tool.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "thinspace/curvature.hpp"
#include "thinspace/errors.hpp"
#include "thinspace/graphs.hpp"
#include "thinspace/skeleton.hpp"
#include "thinspace/thinness.hpp"
#include "thinspace/urysohn.hpp"
#include "thinspace/volume.hpp"

namespace thinspace {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";

/// 17 significant digits: enough to round-trip any double.
inline std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

/// FNV-1a, 64 bit, as 16 hex digits.
inline std::string fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorCode::Io, "cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline Json parse_json_text(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::Parse, what + ": " + e.what());
  }
}

namespace detail {

inline std::string id_string(const Json& v, const std::string& where) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number_unsigned()) return std::to_string(v.get<unsigned long long>());
  throw Error(ErrorCode::Parse, where + ": vertex ids must be strings or integers");
}

}  // namespace detail

/// {"vertices": [id, ...], "edges": [[u, v, length], ...]}. "vertices" is
/// optional; without it ids are numbered by first appearance in "edges".
inline GraphSpec parse_graph_json(const std::string& text) {
  Json doc = parse_json_text(text, "graph");
  require(doc.is_object(), ErrorCode::Parse, "graph: top level must be an object");
  require(doc.contains("edges") && doc["edges"].is_array(), ErrorCode::Parse, "graph: missing \"edges\" array");
  GraphSpec g;
  if (doc.contains("vertices")) {
    require(doc["vertices"].is_array(), ErrorCode::Parse, "graph: \"vertices\" must be an array");
    for (const auto& v : doc["vertices"]) g.ids.push_back(detail::id_string(v, "graph.vertices"));
  }
  std::vector<std::string> seen_order;
  std::unordered_map<std::string, bool> seen;
  for (const auto& e : doc["edges"]) {
    require(e.is_array() && e.size() == 3 && e[2].is_number(), ErrorCode::Parse,
            "graph: each edge must be [u, v, length]");
    EdgeSpec spec{detail::id_string(e[0], "graph.edges"), detail::id_string(e[1], "graph.edges"), e[2].get<double>()};
    for (const auto* id : {&spec.u, &spec.v})
      if (seen.emplace(*id, true).second) seen_order.push_back(*id);
    g.edges.push_back(std::move(spec));
  }
  if (g.ids.empty()) g.ids = std::move(seen_order);
  return g;
}

inline std::string graph_to_json(const GraphSpec& g) {
  Json doc;
  doc["vertices"] = g.ids;
  Json edges = Json::array();
  for (const auto& e : g.edges) edges.push_back(Json::array({e.u, e.v, e.length}));
  doc["edges"] = std::move(edges);
  return doc.dump();
}

/// One point per line, comma separated; a first line that does not parse as
/// numbers is taken as a header. Each point is joined to its k nearest
/// neighbours (ties by row order) and the result symmetrized; edge lengths
/// are Euclidean distances. Vertex ids are "p<row>".
inline GraphSpec points_to_knn_graph(const std::string& text, std::size_t k) {
  require(k >= 1, ErrorCode::BadParameters, "k must be >= 1");
  std::vector<std::vector<double>> pts;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    bool numeric = true;
    while (std::getline(cells, cell, ',')) {
      try {
        std::size_t used = 0;
        double v = std::stod(cell, &used);
        if (cell.find_first_not_of(" \t", used) != std::string::npos || !std::isfinite(v)) numeric = false;
        row.push_back(v);
      } catch (const std::exception&) {
        numeric = false;
      }
    }
    if (!numeric) {
      require(first, ErrorCode::Parse, "points: non-numeric value on line " + std::to_string(line_no));
      first = false;
      continue;
    }
    first = false;
    require(!row.empty(), ErrorCode::Parse, "points: empty row on line " + std::to_string(line_no));
    require(pts.empty() || row.size() == pts.front().size(), ErrorCode::Parse,
            "points: inconsistent dimension on line " + std::to_string(line_no));
    pts.push_back(std::move(row));
  }
  require(pts.size() >= 2, ErrorCode::Parse, "points: need at least two points");
  const std::size_t n = pts.size();
  auto dist = [&](std::size_t a, std::size_t b) {
    double s = 0.0;
    for (std::size_t i = 0; i < pts[a].size(); ++i) s += (pts[a][i] - pts[b][i]) * (pts[a][i] - pts[b][i]);
    return std::sqrt(s);
  };
  GraphSpec g;
  g.ids = graphs::numbered("p", n);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<std::pair<double, std::size_t>> cand;
  for (std::size_t a = 0; a < n; ++a) {
    cand.clear();
    for (std::size_t b = 0; b < n; ++b)
      if (b != a) cand.emplace_back(dist(a, b), b);
    const std::size_t take = std::min(k, cand.size());
    std::partial_sort(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(take), cand.end());
    for (std::size_t i = 0; i < take; ++i) pairs.emplace_back(std::min(a, cand[i].second), std::max(a, cand[i].second));
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  for (auto [a, b] : pairs) {
    const double d = dist(a, b);
    require(d > 0.0, ErrorCode::NonPositiveEdge, "points: duplicate points p" + std::to_string(a) + " and p" +
                                                     std::to_string(b));
    g.add_edge(a, b, d);
  }
  return g;
}

/// Where a space came from, recorded in reports so they can be replayed.
struct InputSource {
  std::string kind = "graph";  // graph | points
  std::string path;
  std::size_t knn = 8;
  std::string hash;
};

struct LoadedInput {
  InputSource source;
  GraphSpec spec;
};

inline LoadedInput load_input(const InputSource& source) {
  LoadedInput out;
  out.source = source;
  const std::string text = read_file(source.path);
  out.source.hash = fnv1a64(text);
  if (source.kind == "points") out.spec = points_to_knn_graph(text, source.knn);
  else out.spec = parse_graph_json(text);
  return out;
}

inline Json source_json(const InputSource& s) {
  Json j;
  j["kind"] = s.kind;
  j["path"] = s.path;
  if (s.kind == "points") j["k"] = s.knn;
  j["fnv1a64"] = s.hash;
  return j;
}

inline InputSource source_from_json(const Json& j) {
  require(j.is_object() && j.contains("kind") && j.contains("path"), ErrorCode::Parse, "input: missing kind/path");
  InputSource s;
  s.kind = j["kind"].get<std::string>();
  s.path = j["path"].get<std::string>();
  if (j.contains("k")) s.knn = j["k"].get<std::size_t>();
  if (j.contains("fnv1a64")) s.hash = j["fnv1a64"].get<std::string>();
  return s;
}

inline Json ids_json(const FiniteGeodesicSpace& space, std::span<const Vertex> vs) {
  Json a = Json::array();
  for (Vertex v : vs) a.push_back(space.id(v));
  return a;
}

inline std::vector<Vertex> ids_from_json(const FiniteGeodesicSpace& space, const Json& a, const std::string& where) {
  require(a.is_array(), ErrorCode::Parse, where + " must be an array of vertex ids");
  std::vector<Vertex> out;
  for (const auto& v : a) out.push_back(space.vertex(detail::id_string(v, where)));
  return out;
}

inline Json segment_json(const FiniteGeodesicSpace& space, const DiscreteSegment& seg) {
  Json j;
  j["start"] = space.id(seg.start());
  j["end"] = space.id(seg.end());
  j["length"] = seg.length();
  j["vertices"] = ids_json(space, seg.path);
  return j;
}

inline Json thin_report_json(const FiniteGeodesicSpace& space, const ThinnessReport& r) {
  Json j;
  j["R"] = r.R;
  j["D"] = r.D;
  j["t_step"] = r.t_step;
  j["tol"] = r.tol;
  j["verdict"] = r.pass ? "pass" : "fail";
  j["segments_checked"] = r.segments_checked;
  j["qualifying_pairs"] = r.qualifying_pairs;
  j["qualifying_pairs_exact"] = r.qualifying_pairs_exact;
  j["sampled"] = r.sampled;
  if (r.witness) {
    const auto& w = *r.witness;
    Json wj;
    wj["segment"] = segment_json(space, w.segment);
    wj["t"] = w.t;
    wj["fiber_base"] = space.id(w.fiber_base);
    wj["x"] = space.id(w.x);
    wj["dist_x_r"] = w.dist_x_r;
    j["witness"] = std::move(wj);
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

/// Rebuilds the report fields needed to replay a witness.
inline ThinnessReport thin_report_from_json(const FiniteGeodesicSpace& space, const Json& j) {
  ThinnessReport r;
  try {
    r.R = j.at("R").get<double>();
    r.D = j.at("D").get<double>();
    r.t_step = j.at("t_step").get<double>();
    r.tol = j.at("tol").get<double>();
    r.pass = j.at("verdict").get<std::string>() == "pass";
    if (j.contains("witness") && !j["witness"].is_null()) {
      const auto& wj = j["witness"];
      ThinnessWitness w;
      auto path = ids_from_json(space, wj.at("segment").at("vertices"), "witness.segment.vertices");
      require(!path.empty(), ErrorCode::Parse, "witness segment is empty");
      for (std::size_t i = 1; i < path.size(); ++i)
        require(space.edge_length(path[i - 1], path[i]).has_value(), ErrorCode::Parse,
                "witness segment is not a walk in the input graph");
      w.segment = make_segment(space, std::move(path));
      w.t = wj.at("t").get<double>();
      w.fiber_base = space.vertex(detail::id_string(wj.at("fiber_base"), "witness.fiber_base"));
      w.x = space.vertex(detail::id_string(wj.at("x"), "witness.x"));
      w.dist_x_r = wj.at("dist_x_r").get<double>();
      r.witness = std::move(w);
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("report: ") + e.what());
  }
  return r;
}

inline Json skeleton_json(const FiniteGeodesicSpace& space, const Skeleton& sk) {
  Json j;
  j["kind"] = kind_name(sk.kind);
  j["R"] = sk.R;
  j["D"] = sk.D;
  j["covering_radius"] = sk.covering_radius;
  j["segment_covering_radius"] = sk.segment_covering_radius;
  Json seg = segment_json(space, sk.segment);
  seg["exact"] = sk.segment_exact;
  j["segment"] = std::move(seg);
  if (sk.kind == SkeletonKind::Circle) {
    Json c;
    c["length"] = sk.circle.length;
    c["distortion"] = sk.distortion;
    c["vertices"] = ids_json(space, sk.circle.cycle);
    c["params"] = sk.circle.params;
    j["circle"] = std::move(c);
  } else {
    j["circle"] = nullptr;
  }
  return j;
}

inline Skeleton skeleton_from_json(const FiniteGeodesicSpace& space, const Json& j) {
  Skeleton sk;
  try {
    const auto kind = j.at("kind").get<std::string>();
    require(kind == "segment" || kind == "circle", ErrorCode::Parse, "skeleton kind must be segment or circle");
    sk.kind = kind == "segment" ? SkeletonKind::Segment : SkeletonKind::Circle;
    sk.R = j.at("R").get<double>();
    sk.D = j.at("D").get<double>();
    sk.covering_radius = j.at("covering_radius").get<double>();
    auto path = ids_from_json(space, j.at("segment").at("vertices"), "skeleton.segment.vertices");
    require(!path.empty(), ErrorCode::SkeletonMismatch, "skeleton segment is empty");
    for (std::size_t i = 1; i < path.size(); ++i)
      require(space.edge_length(path[i - 1], path[i]).has_value(), ErrorCode::SkeletonMismatch,
              "skeleton segment is not a walk in this graph");
    sk.segment = make_segment(space, std::move(path));
    if (sk.kind == SkeletonKind::Circle) {
      const auto& c = j.at("circle");
      sk.circle.cycle = ids_from_json(space, c.at("vertices"), "skeleton.circle.vertices");
      sk.circle.params = c.at("params").get<std::vector<double>>();
      sk.circle.length = c.at("length").get<double>();
      sk.distortion = c.at("distortion").get<double>();
      require(sk.circle.params.size() == sk.circle.cycle.size(), ErrorCode::Parse,
              "skeleton circle params and vertices differ in length");
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("skeleton: ") + e.what());
  }
  return sk;
}

inline Json urysohn_json(const FiniteGeodesicSpace& space, const UrysohnMap& m) {
  Json j;
  j["case"] = case_name(m.map_case);
  j["circular"] = m.circular;
  j["period"] = m.period;
  j["centers"] = ids_json(space, m.centers);
  j["ball_radius"] = m.ball_radius;
  j["ball_gap"] = m.ball_gap;
  j["R"] = m.R;
  j["delta"] = m.delta;
  j["bound"] = m.bound();
  j["max_fiber_diameter"] = m.max_fiber_diameter;
  j["within_bound"] = m.max_fiber_diameter <= m.bound();
  j["lipschitz_excess"] = m.lipschitz_excess;
  Json fibers = Json::array();
  for (const auto& f : m.fibers)
    fibers.push_back(Json{{"bin", f.bin}, {"center", f.bin_center}, {"count", f.count}, {"diameter", f.diameter}});
  j["fibers"] = std::move(fibers);
  return j;
}

inline std::string urysohn_csv(const FiniteGeodesicSpace& space, const UrysohnMap& m) {
  std::string out = "vertex,value\n";
  for (Vertex v = 0; v < space.size(); ++v) out += space.id(v) + "," + format_double(m.values[v]) + "\n";
  return out;
}

inline Json scan_json(const ScanResult& s) {
  Json j;
  Json entries = Json::array();
  for (const auto& e : s.entries) entries.push_back(Json{{"r", e.r}, {"F", e.F}, {"err", e.err}});
  j["entries"] = std::move(entries);
  j["trend"] = trend_name(s.trend);
  return j;
}

inline std::string scan_csv(const ScanResult& s) {
  std::string out = "r,F,err\n";
  for (const auto& e : s.entries) out += format_double(e.r) + "," + format_double(e.F) + "," + format_double(e.err) + "\n";
  return out;
}

inline Json eigen_sample_json(const EigenSample& s) {
  Json A = Json::array();
  for (Eigen::Index i = 0; i < s.A.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < s.A.cols(); ++j) row.push_back(s.A(i, j));
    A.push_back(std::move(row));
  }
  return Json{{"A", std::move(A)}, {"lambda", s.lambda}, {"eps_prime", s.eps_prime}, {"c1", s.c1}, {"c", s.c},
              {"eps", s.eps}};
}

inline Json volume_json(const VolumeGrowth& v) {
  Json j;
  Json samples = Json::array();
  for (const auto& s : v.samples) samples.push_back(Json{{"t", s.t}, {"count", s.count}});
  j["samples"] = std::move(samples);
  j["slope"] = v.slope;
  j["intercept"] = v.intercept;
  j["max_relative_residual"] = v.max_relative_residual;
  j["growth"] = growth_name(v.growth);
  return j;
}

inline std::string volume_csv(const VolumeGrowth& v) {
  std::string out = "t,count\n";
  for (const auto& s : v.samples) out += format_double(s.t) + "," + std::to_string(s.count) + "\n";
  return out;
}

}  // namespace thinspace
