#pragma once

// One-dimensional skeletons of thin spaces: the longest segment, or a circle
// found as the shortest loop passing near the middles of three segments.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "thinspace/errors.hpp"
#include "thinspace/metric.hpp"
#include "thinspace/parallel.hpp"
#include "thinspace/space.hpp"
#include "thinspace/thinness.hpp"

namespace thinspace {

enum class SkeletonKind { Segment, Circle };

inline const char* kind_name(SkeletonKind k) { return k == SkeletonKind::Segment ? "segment" : "circle"; }

/// A closed vertex loop; params[i] is the arclength at cycle[i] and
/// `length` closes the loop back to cycle[0].
struct CycleSupport {
  std::vector<Vertex> cycle;
  std::vector<double> params;
  double length = 0.0;

  PointSet support() const { return PointSet(cycle); }
};

struct Skeleton {
  SkeletonKind kind = SkeletonKind::Segment;
  double R = 0.0;
  double D = 0.0;
  /// Maximal segment; the support when kind == Segment.
  DiscreteSegment segment;
  bool segment_exact = true;
  /// Support when kind == Circle.
  CycleSupport circle;
  double covering_radius = 0.0;
  /// Circle only.
  double distortion = 0.0;
  /// Covering radius of the maximal segment, recorded for both kinds.
  double segment_covering_radius = 0.0;

  PointSet support() const { return kind == SkeletonKind::Segment ? segment.support() : circle.support(); }
};

/// Sub-paths of three segments, each of radius 5R around its midpoint.
struct AnchorTriple {
  std::array<DiscreteSegment, 3> segments;
  std::array<PointSet, 3> intervals;
};

/// The part of `seg` with parameter in [L/2 - radius, L/2 + radius].
inline PointSet middle_interval(const DiscreteSegment& seg, double radius) {
  const double mid = seg.length() / 2.0;
  std::vector<Vertex> out;
  for (std::size_t i = 0; i < seg.path.size(); ++i)
    if (seg.params[i] >= mid - radius && seg.params[i] <= mid + radius) out.push_back(seg.path[i]);
  if (out.empty()) out.push_back(seg.path[seg.nearest_index(mid)]);
  return PointSet(std::move(out));
}

inline AnchorTriple make_anchor_triple(std::array<DiscreteSegment, 3> segments, double R) {
  AnchorTriple a;
  for (std::size_t i = 0; i < 3; ++i) a.intervals[i] = middle_interval(segments[i], 5.0 * R);
  a.segments = std::move(segments);
  return a;
}

struct AnchoredCycle {
  std::array<Vertex, 3> anchors{};
  CycleSupport loop;
};

/// Concatenates the canonical segments a->b, b->c, c->a.
inline CycleSupport close_loop(const FiniteGeodesicSpace& space, const std::array<Vertex, 3>& corners) {
  CycleSupport loop;
  double at = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    auto seg = shortest_segment(space, corners[i], corners[(i + 1) % 3]);
    for (std::size_t k = 0; k + 1 < seg.path.size(); ++k) {
      loop.cycle.push_back(seg.path[k]);
      loop.params.push_back(at + seg.params[k]);
    }
    at += seg.length();
  }
  if (loop.cycle.empty()) {
    loop.cycle.push_back(corners[0]);
    loop.params.push_back(0.0);
  }
  loop.length = at;
  return loop;
}

/// Shortest triangle a, b, c with a, b, c within D of the three intervals
/// (closed neighborhoods). Ties resolve to the lexicographically smallest
/// (a, b, c).
inline AnchoredCycle min_anchored_cycle(const FiniteGeodesicSpace& space, const AnchorTriple& anchors, double D) {
  require(D > 0.0, ErrorCode::BadParameters, "D must be positive");
  std::array<std::vector<Vertex>, 3> near;
  std::array<std::vector<char>, 3> in;
  for (std::size_t i = 0; i < 3; ++i) {
    require(!anchors.intervals[i].empty(), ErrorCode::EmptyAnchorNeighborhood, "anchor interval is empty");
    auto d = distance_to_set(space, anchors.intervals[i]);
    in[i].assign(space.size(), 0);
    for (Vertex v = 0; v < space.size(); ++v) {
      if (d[v] <= D + roundoff_slack(d[v], D)) {
        near[i].push_back(v);
        in[i][v] = 1;
      }
    }
    require(!near[i].empty(), ErrorCode::EmptyAnchorNeighborhood, "anchor neighborhood is empty");
  }
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j)
      for (Vertex v : near[i])
        require(!in[j][v], ErrorCode::AnchorsOverlap,
                "anchor neighborhoods " + std::to_string(i) + " and " + std::to_string(j) + " share vertex " +
                    space.id(v));

  struct Candidate {
    double length;
    Vertex a, b, c;
    bool operator<(const Candidate& o) const {
      if (!same_length(length, o.length)) return length < o.length;
      if (a != o.a) return a < o.a;
      if (b != o.b) return b < o.b;
      return c < o.c;
    }
  };
  std::optional<Candidate> best;
  std::mutex mutex;
  parallel_for(near[0].size(), [&](std::size_t ia, unsigned) {
    const Vertex a = near[0][ia];
    auto row_a = space.row(a);
    // g(c) = min_b d(a, b) + d(b, c), a seeded multi-source search.
    std::vector<std::pair<Vertex, double>> seeds;
    seeds.reserve(near[1].size());
    for (Vertex b : near[1]) seeds.emplace_back(b, row_a[b]);
    auto g = space.distances_from_seeded(seeds);
    double shortest = kInfinity;
    for (Vertex c : near[2]) shortest = std::min(shortest, g[c] + row_a[c]);
    std::optional<Candidate> local;
    for (Vertex c : near[2]) {
      if (!same_length(g[c] + row_a[c], shortest)) continue;
      auto row_c = space.row(c);
      for (Vertex b : near[1]) {  // smallest b realizing g(c)
        if (same_length(row_a[b] + row_c[b], g[c])) {
          Candidate cand{row_a[b] + row_c[b] + row_a[c], a, b, c};
          if (!local || cand.b < local->b || (cand.b == local->b && cand.c < local->c)) local = cand;
          break;
        }
      }
    }
    std::lock_guard lock(mutex);
    if (local && (!best || *local < *best)) best = local;
  });
  AnchoredCycle out;
  out.anchors = {best->a, best->b, best->c};
  out.loop = close_loop(space, out.anchors);
  return out;
}

/// max |d(a, b) - arc(a, b)| over pairs of loop positions; all pairs up to
/// `all_pairs_limit` positions, otherwise an evenly strided subset of that size.
inline double circle_distortion(const FiniteGeodesicSpace& space, const CycleSupport& loop,
                                std::size_t all_pairs_limit = 2000) {
  const std::size_t m = loop.cycle.size();
  if (m < 2) return 0.0;
  std::vector<std::size_t> picks;
  if (m <= all_pairs_limit) {
    for (std::size_t i = 0; i < m; ++i) picks.push_back(i);
  } else {
    for (std::size_t k = 0; k < all_pairs_limit; ++k) picks.push_back(k * m / all_pairs_limit);
  }
  std::vector<double> worst(picks.size(), 0.0);
  parallel_for(picks.size(), [&](std::size_t pi, unsigned) {
    const std::size_t i = picks[pi];
    auto row = space.row(loop.cycle[i]);
    double w = 0.0;
    for (std::size_t pj = pi + 1; pj < picks.size(); ++pj) {
      const std::size_t j = picks[pj];
      const double gap = std::abs(loop.params[j] - loop.params[i]);
      const double arc = std::min(gap, loop.length - gap);
      w = std::max(w, std::abs(row[loop.cycle[j]] - arc));
    }
    worst[pi] = w;
  });
  return *std::max_element(worst.begin(), worst.end());
}

struct SkeletonOptions {
  SegmentSearch search = SegmentSearch::Exhaustive;
  /// Circle acceptance: distortion <= factor * scale.
  double distortion_factor = 2.0;
};

/// Requires a passing thinness report for the same (R, D) as evidence.
///
/// The maximal segment l is kept when every vertex lies within D + scale of
/// it. Otherwise the circle construction is attempted: p maximizes d(., l),
/// gamma_1 and gamma_2 join p to the ends of l, and the loop is the shortest
/// one through the D-neighborhoods of the three middle intervals. The loop is
/// accepted when it is nearly isometric, covers within D + scale and has
/// length >= 50R. Failing that, l is kept if it covers within 200R.
inline Skeleton extract_skeleton(const FiniteGeodesicSpace& space, double R, double D,
                                 const ThinnessReport& evidence, const SkeletonOptions& opts = {}) {
  require(evidence.pass, ErrorCode::NotThinEvidence, "thinness evidence is a failing report");
  require(same_length(evidence.R, R) && same_length(evidence.D, D), ErrorCode::NotThinEvidence,
          "thinness evidence was computed for different R, D");
  Skeleton sk;
  sk.R = R;
  sk.D = D;
  auto maximal = maximal_segment(space, opts.search);
  sk.segment = std::move(maximal.segment);
  sk.segment_exact = maximal.exact;
  auto to_l = distance_to_set(space, sk.segment.support());
  sk.segment_covering_radius = *std::max_element(to_l.begin(), to_l.end());
  sk.covering_radius = sk.segment_covering_radius;
  const double scale = space.scale();
  if (sk.segment_covering_radius <= D + scale) return sk;

  std::optional<std::string> circle_failure;
  try {
    Vertex p = 0;
    for (Vertex v = 1; v < space.size(); ++v)
      if (to_l[v] > to_l[p]) p = v;
    auto gamma1 = shortest_segment(space, p, sk.segment.end());
    auto gamma2 = shortest_segment(space, p, sk.segment.start());
    auto anchors = make_anchor_triple({gamma1, gamma2, sk.segment}, R);
    auto loop = min_anchored_cycle(space, anchors, D);
    double distortion = circle_distortion(space, loop.loop);
    double cover = covering_radius(space, loop.loop.support());
    if (distortion > opts.distortion_factor * scale) {
      circle_failure = "loop distortion " + std::to_string(distortion) + " exceeds tolerance";
    } else if (cover > D + scale) {
      circle_failure = "loop covering radius " + std::to_string(cover) + " exceeds D + scale";
    } else if (loop.loop.length < 50.0 * R) {
      circle_failure = "loop length " + std::to_string(loop.loop.length) + " is below 50R";
    } else {
      sk.kind = SkeletonKind::Circle;
      sk.circle = std::move(loop.loop);
      sk.distortion = distortion;
      sk.covering_radius = cover;
      return sk;
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::AnchorsOverlap && e.code() != ErrorCode::EmptyAnchorNeighborhood) throw;
    circle_failure = e.what();
  }
  require(sk.segment_covering_radius <= 200.0 * R, ErrorCode::CircleBranchUnreachable,
          "segment covering radius " + std::to_string(sk.segment_covering_radius) +
              " exceeds 200R and no circle skeleton was found: " + circle_failure.value_or(""));
  return sk;
}

}  // namespace thinspace
