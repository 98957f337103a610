#pragma once

// Explicit maps of bounded 1-Urysohn width built from a skeleton.
//
//  * segment skeleton, one-sided: f(x) = d(phi(0), x);
//  * segment skeleton with mass beyond 1000R on both sides of its midpoint:
//    f(x) = +-d(B, x), B the 1000R-ball at the midpoint, sign from the side
//    of x's projection;
//  * circle skeleton: the two-ball map onto a circle of length 2 d(B1, B2),
//    or the constant map when the balls at phi(0) and phi(L/2) meet.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include "thinspace/errors.hpp"
#include "thinspace/metric.hpp"
#include "thinspace/parallel.hpp"
#include "thinspace/skeleton.hpp"
#include "thinspace/space.hpp"
#include "thinspace/thinness.hpp"

namespace thinspace {

enum class UrysohnCase { Ray, Line, Circle, Constant };

inline const char* case_name(UrysohnCase c) {
  switch (c) {
    case UrysohnCase::Ray: return "ray";
    case UrysohnCase::Line: return "line";
    case UrysohnCase::Circle: return "circle";
    case UrysohnCase::Constant: return "constant";
  }
  return "?";
}

struct FiberStat {
  std::int64_t bin = 0;
  double bin_center = 0.0;
  std::size_t count = 0;
  double diameter = 0.0;
};

struct UrysohnMap {
  UrysohnCase map_case = UrysohnCase::Ray;
  /// True when values live on a circle of length `period`.
  bool circular = false;
  double period = 0.0;
  std::vector<double> values;
  /// Base points: phi(0) for rays, the midpoint for lines, phi(0) and phi(L/2)
  /// for circles.
  std::vector<Vertex> centers;
  double ball_radius = 0.0;
  /// d(B1, B2) for circles.
  double ball_gap = 0.0;
  double R = 0.0;
  double delta = 0.0;
  std::vector<FiberStat> fibers;
  double max_fiber_diameter = 0.0;
  /// max over edges of |f(u) - f(v)| - length(u, v); <= 0 when 1-Lipschitz.
  double lipschitz_excess = 0.0;

  double bound() const { return 2000.0 * R + 2.0 * delta; }
  double gap(double a, double b) const {
    double g = std::abs(a - b);
    return circular ? std::min(g, period - g) : g;
  }
};

namespace detail {

/// Vertices of the closed ball B_r(center).
inline std::vector<Vertex> closed_ball(const FiniteGeodesicSpace& space, Vertex center, double r) {
  auto row = space.row(center);
  std::vector<Vertex> out;
  for (Vertex v = 0; v < space.size(); ++v)
    if (row[v] <= r + roundoff_slack(row[v], r)) out.push_back(v);
  return out;
}

inline void validate_skeleton(const FiniteGeodesicSpace& space, const Skeleton& sk) {
  auto check_walk = [&](std::span<const Vertex> walk, bool closed) {
    require(!walk.empty(), ErrorCode::SkeletonMismatch, "skeleton support is empty");
    for (Vertex v : walk) require(v < space.size(), ErrorCode::SkeletonMismatch, "skeleton vertex out of range");
    for (std::size_t i = 1; i < walk.size(); ++i)
      require(walk[i - 1] == walk[i] || space.edge_length(walk[i - 1], walk[i]).has_value(),
              ErrorCode::SkeletonMismatch, "skeleton support is not a walk in this space");
    if (closed && walk.size() > 1)
      require(space.edge_length(walk.back(), walk.front()).has_value(), ErrorCode::SkeletonMismatch,
              "skeleton loop does not close in this space");
  };
  if (sk.kind == SkeletonKind::Segment) check_walk(sk.segment.path, false);
  else check_walk(sk.circle.cycle, true);
}

/// Exact diameter of a vertex subset. Lazy spaces run one Dijkstra per member,
/// stopped once every member is settled.
inline double subset_diameter(const FiniteGeodesicSpace& space, std::span<const Vertex> members) {
  if (members.size() < 2) return 0.0;
  if (members.size() == space.size()) return maximal_segment(space).segment.length();
  std::vector<double> worst(members.size(), 0.0);
  if (space.dense()) {
    parallel_for(members.size(), [&](std::size_t i, unsigned) {
      auto row = space.row(members[i]);
      double w = 0.0;
      for (std::size_t j = i + 1; j < members.size(); ++j) w = std::max(w, row[members[j]]);
      worst[i] = w;
    });
    return *std::max_element(worst.begin(), worst.end());
  }
  std::vector<char> is_member(space.size(), 0);
  for (Vertex v : members) is_member[v] = 1;
  std::vector<WorkerScratch> scratch(worker_count(members.size()));
  parallel_for(members.size(), [&](std::size_t i, unsigned worker) {
    auto& sc = scratch[worker];
    sc.reset(space.size());
    const auto mark = sc.current;
    using Item = std::pair<double, Vertex>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
    sc.stamp[members[i]] = mark;
    sc.dist[members[i]] = 0.0;
    heap.emplace(0.0, members[i]);
    std::size_t settled = 0;
    double w = 0.0;
    while (!heap.empty() && settled < members.size()) {
      auto [d, v] = heap.top();
      heap.pop();
      if (d > sc.dist[v]) continue;
      if (is_member[v]) {
        ++settled;
        w = std::max(w, d);
      }
      for (const auto& arc : space.neighbors(v)) {
        const double nd = d + arc.length;
        if (sc.stamp[arc.to] != mark || nd < sc.dist[arc.to]) {
          sc.stamp[arc.to] = mark;
          sc.dist[arc.to] = nd;
          heap.emplace(nd, arc.to);
        }
      }
    }
    worst[i] = w;
  });
  return *std::max_element(worst.begin(), worst.end());
}

/// For every vertex, whether its projection onto `first` ∪ `second` meets
/// each part.
struct SideFlags {
  std::vector<char> first, second;
};

inline SideFlags projection_sides(const FiniteGeodesicSpace& space, std::span<const Vertex> first,
                                  std::span<const Vertex> second) {
  auto d1 = space.distances_from(first);
  auto d2 = space.distances_from(second);
  SideFlags out{std::vector<char>(space.size()), std::vector<char>(space.size())};
  for (Vertex x = 0; x < space.size(); ++x) {
    const double dk = std::min(d1[x], d2[x]);
    out.first[x] = same_length(d1[x], dk);
    out.second[x] = same_length(d2[x], dk);
  }
  return out;
}

}  // namespace detail

/// Buckets values into width-delta bins (circular when the map is) and
/// computes each bin's exact diameter.
inline std::vector<FiberStat> fiber_diameters(const FiniteGeodesicSpace& space, const UrysohnMap& map,
                                              double delta) {
  require(delta > 0.0, ErrorCode::BadParameters, "bin width must be positive");
  require(map.values.size() == space.size(), ErrorCode::SkeletonMismatch, "map was built on another space");
  std::int64_t bins_on_circle = 0;
  if (map.circular) bins_on_circle = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(map.period / delta)));
  std::map<std::int64_t, std::vector<Vertex>> bins;
  for (Vertex v = 0; v < space.size(); ++v) {
    auto k = static_cast<std::int64_t>(std::floor(map.values[v] / delta));
    if (map.circular) k = ((k % bins_on_circle) + bins_on_circle) % bins_on_circle;
    bins[k].push_back(v);
  }
  std::vector<FiberStat> out;
  out.reserve(bins.size());
  for (auto& [k, members] : bins) {
    FiberStat st;
    st.bin = k;
    double lo = static_cast<double>(k) * delta;
    double hi = lo + delta;
    if (map.circular) hi = std::min(hi, map.period);
    st.bin_center = 0.5 * (lo + hi);
    st.count = members.size();
    st.diameter = detail::subset_diameter(space, members);
    out.push_back(st);
  }
  return out;
}

/// Builds the map for the skeleton's case and audits it. `delta` <= 0
/// selects R/10.
inline UrysohnMap build_urysohn_map(const FiniteGeodesicSpace& space, const Skeleton& sk, double R,
                                    double delta = 0.0) {
  require(R > 0.0, ErrorCode::BadParameters, "R must be positive");
  detail::validate_skeleton(space, sk);
  UrysohnMap map;
  map.R = R;
  map.delta = delta > 0.0 ? delta : R / 10.0;
  map.ball_radius = 1000.0 * R;
  const std::size_t n = space.size();
  const double scale = space.scale();
  map.values.assign(n, 0.0);

  if (sk.kind == SkeletonKind::Segment) {
    const auto& seg = sk.segment;
    const std::size_t mid_index = seg.nearest_index(seg.length() / 2.0);
    const Vertex mid = seg.path[mid_index];
    const double mid_param = seg.params[mid_index];
    // Side of each vertex from its projection; +1, -1, or 0 for both.
    std::vector<Vertex> pos_part, neg_part;
    for (std::size_t i = 0; i < seg.path.size(); ++i)
      (seg.params[i] >= mid_param ? pos_part : neg_part).push_back(seg.path[i]);
    std::vector<int> side(n, 1);
    if (!neg_part.empty()) {
      auto flags = detail::projection_sides(space, pos_part, neg_part);
      for (Vertex x = 0; x < n; ++x) side[x] = flags.first[x] && flags.second[x] ? 0 : (flags.first[x] ? 1 : -1);
    }
    auto mid_row = space.row(mid);
    bool far_pos = false, far_neg = false;
    for (Vertex x = 0; x < n; ++x) {
      if (mid_row[x] <= map.ball_radius) continue;
      if (side[x] >= 0) far_pos = true;
      if (side[x] <= 0) far_neg = true;
    }
    if (far_pos && far_neg) {
      map.map_case = UrysohnCase::Line;
      map.centers = {mid};
      auto to_ball = space.distances_from(detail::closed_ball(space, mid, map.ball_radius));
      for (Vertex x = 0; x < n; ++x) {
        require(side[x] != 0 || to_ball[x] <= scale, ErrorCode::AmbiguousSide,
                "vertex " + space.id(x) + " projects to both sides of the midpoint outside the base ball");
        map.values[x] = side[x] >= 0 ? to_ball[x] : -to_ball[x];
      }
    } else {
      map.map_case = UrysohnCase::Ray;
      map.centers = {seg.start()};
      auto row = space.row(seg.start());
      for (Vertex x = 0; x < n; ++x) map.values[x] = row[x];
    }
  } else {
    const auto& loop = sk.circle;
    const double L = loop.length;
    std::size_t half_index = 0;
    for (std::size_t i = 1; i < loop.cycle.size(); ++i)
      if (std::abs(loop.params[i] - L / 2.0) < std::abs(loop.params[half_index] - L / 2.0)) half_index = i;
    const Vertex p0 = loop.cycle.front();
    const Vertex p1 = loop.cycle[half_index];
    const double half = loop.params[half_index];
    map.centers = {p0, p1};
    auto ball1 = detail::closed_ball(space, p0, map.ball_radius);
    auto ball2 = detail::closed_ball(space, p1, map.ball_radius);
    auto to_b1 = space.distances_from(ball1);
    auto to_b2 = space.distances_from(ball2);
    double gap = kInfinity;
    for (Vertex b : ball2) gap = std::min(gap, to_b1[b]);
    map.ball_gap = gap;
    if (!(gap > 0.0)) {
      map.map_case = UrysohnCase::Constant;
    } else {
      map.map_case = UrysohnCase::Circle;
      map.circular = true;
      map.period = 2.0 * gap;
      // phi(0) closes the loop, so it belongs to both halves.
      std::vector<Vertex> first_half, second_half;
      for (std::size_t i = 0; i < loop.cycle.size(); ++i) {
        if (loop.params[i] <= half) first_half.push_back(loop.cycle[i]);
        if (loop.params[i] >= half || i == 0) second_half.push_back(loop.cycle[i]);
      }
      auto flags = detail::projection_sides(space, first_half, second_half);
      std::vector<char> ambiguous(n, 0);
      for (Vertex x = 0; x < n; ++x) {
        const double f1 = std::min(to_b1[x], gap);
        const double f2 = std::fmod(std::min(gap + to_b2[x], 2.0 * gap), map.period);
        map.values[x] = flags.first[x] ? f1 : f2;
        if (flags.first[x] && flags.second[x] && map.gap(f1, f2) > scale) ambiguous[x] = 1;
      }
      for (Vertex x = 0; x < n; ++x)
        require(!ambiguous[x], ErrorCode::AmbiguousSide,
                "vertex " + space.id(x) + " projects to both halves of the circle with inconsistent values");
    }
  }

  double excess = -kInfinity;
  for (const auto& e : space.edges()) excess = std::max(excess, map.gap(map.values[e.u], map.values[e.v]) - e.length);
  map.lipschitz_excess = excess;
  map.fibers = fiber_diameters(space, map, map.delta);
  for (const auto& f : map.fibers) map.max_fiber_diameter = std::max(map.max_fiber_diameter, f.diameter);
  return map;
}

}  // namespace thinspace
