#pragma once

// Segments, projections and neighborhoods over a FiniteGeodesicSpace.

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "thinspace/errors.hpp"
#include "thinspace/space.hpp"

namespace thinspace {

/// Sorted, duplicate-free set of vertices.
class PointSet {
 public:
  PointSet() = default;
  PointSet(std::initializer_list<Vertex> members) : members_(members) { normalize(); }
  explicit PointSet(std::vector<Vertex> members) : members_(std::move(members)) { normalize(); }

  bool contains(Vertex v) const { return std::binary_search(members_.begin(), members_.end(), v); }
  bool empty() const { return members_.empty(); }
  std::size_t size() const { return members_.size(); }
  std::span<const Vertex> members() const { return members_; }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }
  bool operator==(const PointSet&) const = default;

  friend std::ostream& operator<<(std::ostream& os, const PointSet& set) {
    os << '{';
    for (std::size_t i = 0; i < set.members_.size(); ++i) os << (i ? ", " : "") << set.members_[i];
    return os << '}';
  }

 private:
  void normalize() {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  }
  std::vector<Vertex> members_;
};

/// An ordered path with arclength parameters. geo_defect measures how far the
/// path is from realizing distances between its own vertices.
struct DiscreteSegment {
  std::vector<Vertex> path;
  std::vector<double> params;
  double geo_defect = 0.0;

  double length() const { return params.empty() ? 0.0 : params.back(); }
  Vertex start() const { return path.front(); }
  Vertex end() const { return path.back(); }
  PointSet support() const { return PointSet(path); }

  /// Index of the path vertex whose parameter is nearest to t; ties go to the
  /// smaller parameter.
  std::size_t nearest_index(double t) const {
    auto it = std::lower_bound(params.begin(), params.end(), t);
    if (it == params.begin()) return 0;
    if (it == params.end()) return params.size() - 1;
    std::size_t hi = static_cast<std::size_t>(it - params.begin());
    return (t - params[hi - 1] <= params[hi] - t) ? hi - 1 : hi;
  }
};

/// Wraps a vertex walk as a segment. Consecutive vertices must be adjacent.
/// Because d(v_i, v_j) never exceeds the arclength between them, the maximal
/// pairwise defect is attained at the endpoints and equals length - d(v_0, v_m).
inline DiscreteSegment make_segment(const FiniteGeodesicSpace& space, std::vector<Vertex> path) {
  require(!path.empty(), ErrorCode::BadParameters, "segment path is empty");
  DiscreteSegment seg;
  seg.params.reserve(path.size());
  seg.params.push_back(0.0);
  for (std::size_t i = 1; i < path.size(); ++i) {
    auto len = space.edge_length(path[i - 1], path[i]);
    require(len.has_value(), ErrorCode::BadParameters,
            "path step " + space.id(path[i - 1]) + " -> " + space.id(path[i]) + " is not an edge");
    seg.params.push_back(seg.params.back() + *len);
  }
  seg.path = std::move(path);
  seg.geo_defect = std::abs(seg.length() - space.dist(seg.start(), seg.end()));
  return seg;
}

/// Brute-force defect over all vertex pairs; used to audit make_segment.
inline double pairwise_geo_defect(const FiniteGeodesicSpace& space, const DiscreteSegment& seg) {
  double worst = 0.0;
  for (std::size_t i = 0; i < seg.path.size(); ++i) {
    auto row = space.row(seg.path[i]);
    for (std::size_t j = i + 1; j < seg.path.size(); ++j)
      worst = std::max(worst, std::abs(row[seg.path[j]] - (seg.params[j] - seg.params[i])));
  }
  return worst;
}

/// Canonical next step from `from` toward the vertex whose distance row is
/// `to_row`: the smallest-index neighbor lying on a shortest path.
inline Vertex next_hop(const FiniteGeodesicSpace& space, Vertex from, const DistanceRow& to_row) {
  const double here = to_row[from];
  for (const auto& arc : space.neighbors(from)) {
    if (same_length(arc.length + to_row[arc.to], here)) return arc.to;
  }
  // Unreachable for a correct distance row; fall back to the strict minimizer.
  Vertex best = space.neighbors(from).front().to;
  double best_len = kInfinity;
  for (const auto& arc : space.neighbors(from)) {
    if (arc.length + to_row[arc.to] < best_len) {
      best_len = arc.length + to_row[arc.to];
      best = arc.to;
    }
  }
  return best;
}

inline DiscreteSegment shortest_segment(const FiniteGeodesicSpace& space, Vertex u, Vertex v) {
  require(u < space.size() && v < space.size(), ErrorCode::UnknownVertex, "segment endpoint out of range");
  auto to_row = space.row(v);
  std::vector<Vertex> path{u};
  Vertex cur = u;
  while (cur != v) {
    cur = next_hop(space, cur, to_row);
    path.push_back(cur);
  }
  return make_segment(space, std::move(path));
}

/// Nearest points of K to x.
inline PointSet project(const FiniteGeodesicSpace& space, const PointSet& target, Vertex x) {
  require(!target.empty(), ErrorCode::EmptyTarget, "projection target is empty");
  auto row = space.row(x);
  double best = kInfinity;
  for (Vertex y : target) best = std::min(best, row[y]);
  std::vector<Vertex> out;
  for (Vertex y : target)
    if (same_length(row[y], best)) out.push_back(y);
  return PointSet(std::move(out));
}

/// Union of the projections of every vertex of `points`.
inline PointSet project_all(const FiniteGeodesicSpace& space, const PointSet& target,
                            std::span<const Vertex> points) {
  std::vector<Vertex> out;
  for (Vertex x : points) {
    auto p = project(space, target, x);
    out.insert(out.end(), p.begin(), p.end());
  }
  return PointSet(std::move(out));
}

/// Distance from every vertex to the set.
inline std::vector<double> distance_to_set(const FiniteGeodesicSpace& space, const PointSet& set) {
  require(!set.empty(), ErrorCode::EmptyTarget, "target set is empty");
  return space.distances_from(set.members());
}

/// Points whose distance to K is realized at y, up to `tol`: d(x, K) >= d(x, y) - tol.
/// A negative tol selects the default slack of one edge length (space.scale()).
inline PointSet inverse_project(const FiniteGeodesicSpace& space, const PointSet& target, Vertex y,
                                double tol = -1.0) {
  require(target.contains(y), ErrorCode::TargetNotInSet,
          "inverse projection base '" + space.id(y) + "' is not in the target set");
  if (tol < 0.0) tol = space.scale();
  auto to_target = distance_to_set(space, target);
  auto row = space.row(y);
  std::vector<Vertex> out;
  for (Vertex x = 0; x < space.size(); ++x) {
    if (to_target[x] + roundoff_slack(to_target[x], row[x]) >= row[x] - tol) out.push_back(x);
  }
  return PointSet(std::move(out));
}

/// Open r-neighborhood {x : d(x, A) < r}.
inline PointSet neighborhood(const FiniteGeodesicSpace& space, const PointSet& set, double r) {
  require(r > 0.0, ErrorCode::BadParameters, "neighborhood radius must be positive");
  auto d = distance_to_set(space, set);
  std::vector<Vertex> out;
  for (Vertex x = 0; x < space.size(); ++x)
    if (d[x] < r) out.push_back(x);
  return PointSet(std::move(out));
}

/// True iff every member of `covered` lies within eps of `net`.
inline bool is_net(const FiniteGeodesicSpace& space, const PointSet& net, const PointSet& covered, double eps) {
  if (covered.empty()) return true;
  if (net.empty()) return false;
  auto d = space.distances_from(net.members());
  for (Vertex a : covered)
    if (d[a] > eps) return false;
  return true;
}

/// max over vertices of d(v, support).
inline double covering_radius(const FiniteGeodesicSpace& space, const PointSet& support) {
  auto d = distance_to_set(space, support);
  return *std::max_element(d.begin(), d.end());
}

enum class SegmentSearch { Exhaustive, DoubleSweep };

struct MaximalSegment {
  DiscreteSegment segment;
  /// False when produced by the double-sweep heuristic (possibly sub-maximal).
  bool exact = true;
};

namespace detail {

inline double eccentricity(const DistanceRow& row) {
  double e = 0.0;
  for (double d : row.values()) e = std::max(e, d);
  return e;
}

struct DiameterBounds {
  double diameter = 0.0;
  /// Per-vertex eccentricity upper bounds.
  std::vector<double> upper;
};

/// Exact diameter via eccentricity bounds (Takes & Kosters), used when the
/// matrix is not stored.
inline DiameterBounds bounded_diameter(const FiniteGeodesicSpace& space) {
  const std::size_t n = space.size();
  std::vector<double> lower(n, 0.0), upper(n, kInfinity);
  std::vector<char> active(n, 1);
  std::size_t remaining = n;
  double best_lower = 0.0, best_upper = kInfinity;
  bool pick_upper = false;
  while (remaining > 0 && best_lower < best_upper - roundoff_slack(best_lower, 0.0)) {
    Vertex pick = 0;
    bool found = false;
    for (Vertex v = 0; v < n; ++v) {
      if (!active[v]) continue;
      if (!found || (pick_upper ? upper[v] > upper[pick] : lower[v] < lower[pick])) {
        pick = v;
        found = true;
      }
    }
    pick_upper = !pick_upper;
    auto row = space.row(pick);
    double ecc = eccentricity(row);
    best_lower = std::max(best_lower, ecc);
    best_upper = std::min(best_upper, 2.0 * ecc);
    for (Vertex w = 0; w < n; ++w) {
      if (!active[w]) continue;
      double d = row[w];
      lower[w] = std::max({lower[w], ecc - d, d});
      upper[w] = std::min(upper[w], ecc + d);
      bool settled = same_length(lower[w], upper[w]) ||
                     (upper[w] <= best_lower && lower[w] >= best_upper / 2.0);
      if (w == pick || settled) {
        active[w] = 0;
        --remaining;
      }
    }
  }
  return {best_lower, std::move(upper)};
}

}  // namespace detail

/// Longest canonical segment. Exhaustive mode returns a diameter-realizing
/// pair (smallest start index, then smallest end index); double sweep is a
/// cheap heuristic flagged as inexact.
inline MaximalSegment maximal_segment(const FiniteGeodesicSpace& space,
                                      SegmentSearch mode = SegmentSearch::Exhaustive) {
  const std::size_t n = space.size();
  if (mode == SegmentSearch::DoubleSweep) {
    auto farthest = [&](Vertex from) {
      auto row = space.row(from);
      Vertex best = from;
      for (Vertex v = 0; v < n; ++v)
        if (row[v] > row[best] + roundoff_slack(row[v], row[best])) best = v;
      return best;
    };
    Vertex a = farthest(0);
    Vertex b = farthest(a);
    return {shortest_segment(space, std::min(a, b), std::max(a, b)), false};
  }

  double diameter = 0.0;
  std::vector<double> upper;
  if (space.dense()) {
    upper.resize(n);
    for (Vertex u = 0; u < n; ++u) {
      upper[u] = detail::eccentricity(space.row(u));
      diameter = std::max(diameter, upper[u]);
    }
  } else {
    auto bounds = detail::bounded_diameter(space);
    diameter = bounds.diameter;
    upper = std::move(bounds.upper);
  }
  auto realizes = [&](double d) { return d >= diameter - roundoff_slack(d, diameter); };
  for (Vertex u = 0; u < n; ++u) {
    if (!realizes(upper[u])) continue;
    auto row = space.row(u);
    if (!realizes(detail::eccentricity(row))) continue;
    for (Vertex v = 0; v < n; ++v) {
      if (v != u && realizes(row[v])) return {shortest_segment(space, u, v), true};
    }
  }
  return {shortest_segment(space, 0, 0), true};
}

}  // namespace thinspace
