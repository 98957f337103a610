#pragma once

// (R, D)-thinness certification.
//
// A space is (R, D)-thin if for every segment r longer than 2R, every t in
// (R, L - R) and every x whose distance to r is realized at r(t), d(x, r) < D.
// The discrete check uses one canonical shortest path per vertex pair, samples
// t on a grid of step <= D/4 and widens each fiber by `tol` (one edge by
// default). Moving t by D/4 moves r(t) by D/4, so a skipped parameter's fiber
// lies within D/4 of a checked one by the triangle inequality.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <mutex>
#include <optional>
#include <queue>
#include <string>
#include <tuple>
#include <vector>

#include "thinspace/errors.hpp"
#include "thinspace/metric.hpp"
#include "thinspace/parallel.hpp"
#include "thinspace/space.hpp"

namespace thinspace {

struct ThinCheckOptions {
  /// Grid step for t; 0 selects D/4.
  double t_step = 0.0;
  /// Fiber slack; negative selects space.scale().
  double tol = -1.0;
  /// Maximum number of segments to check; unset means exhaustive.
  std::optional<std::size_t> segment_budget;
  /// When the budget is exceeded: sample (true) or fail with BudgetExceeded.
  bool allow_sampling = true;
};

struct ThinnessWitness {
  DiscreteSegment segment;
  double t = 0.0;
  /// Vertex of the segment nearest to r(t); x lies in its fiber.
  Vertex fiber_base = 0;
  Vertex x = 0;
  double dist_x_r = 0.0;
};

struct ThinnessReport {
  double R = 0.0;
  double D = 0.0;
  double t_step = 0.0;
  double tol = 0.0;
  bool pass = true;
  std::optional<ThinnessWitness> witness;
  /// Size of the segment set under test (all qualifying pairs, or the budget).
  std::size_t segments_checked = 0;
  /// Number of vertex pairs at distance > 2R (a lower bound when a budgeted
  /// scan stopped early).
  std::size_t qualifying_pairs = 0;
  bool qualifying_pairs_exact = true;
  bool sampled = false;
};

namespace detail {

/// Ordering key of a segment: longer first, then lexicographic endpoints.
struct PairKey {
  double length;
  Vertex u;
  Vertex v;
  bool operator<(const PairKey& o) const {
    if (length != o.length) return length > o.length;
    if (u != o.u) return u < o.u;
    return v < o.v;
  }
};

/// A violation inside one segment; smaller is more severe.
struct Violation {
  double dist_x_r;
  double slack;
  std::size_t grid_index;
  Vertex x;
  Vertex y;
  double t;
  bool operator<(const Violation& o) const {
    if (dist_x_r != o.dist_x_r) return dist_x_r > o.dist_x_r;
    if (slack != o.slack) return slack < o.slack;
    if (grid_index != o.grid_index) return grid_index < o.grid_index;
    return x < o.x;
  }
};

/// Per-worker scratch, reused across segments and roots.
struct WorkerScratch {
  std::vector<double> dist;
  std::vector<std::uint32_t> stamp;
  std::uint32_t current = 0;
  std::vector<Vertex> queue;
  std::vector<std::size_t> exits;
  std::vector<std::vector<double>> levels;

  void reset(std::size_t n) {
    if (stamp.size() != n) {
      dist.assign(n, kInfinity);
      stamp.assign(n, 0);
      current = 0;
    }
    if (++current == 0) {
      std::fill(stamp.begin(), stamp.end(), 0);
      current = 1;
    }
  }
};

class ThinChecker {
 public:
  ThinChecker(const FiniteGeodesicSpace& space, double R, double D, double t_step, double tol)
      : space_(space), R_(R), D_(D), t_step_(t_step), tol_(tol) {}

  /// Most severe violation on one segment, given d(., segment) for all vertices.
  std::optional<Violation> check(std::span<const Vertex> path, std::span<const double> params,
                                 std::span<const double> to_segment, WorkerScratch& scratch) const {
    const double L = params.back();
    if (!(L > 2.0 * R_)) return std::nullopt;
    // Canonical segments are geodesic, so the path members of the fiber of
    // p_i are the p_k with |s_k - s_i| <= tol. The search can only leave the
    // path through such a p_k with an off-path neighbor (an "exit").
    auto& exits = scratch.exits;
    exits.clear();
    for (std::size_t i = 0; i < path.size(); ++i) {
      for (const auto& arc : space_.neighbors(path[i])) {
        if (to_segment[arc.to] > 0.0) {
          exits.push_back(i);
          break;
        }
      }
    }
    const double reach = tol_ + 1e-9 * std::max(1.0, L);
    std::optional<Violation> worst;
    std::size_t lo = 0, next_unseen = 0;
    for (std::size_t e : exits) {
      const double se = params[e];
      while (lo < params.size() && params[lo] < se - reach) ++lo;
      for (std::size_t i = std::max(lo, next_unseen); i < params.size() && params[i] <= se + reach; ++i) {
        next_unseen = i + 1;
        auto j = first_grid_point(params, i);
        if (!j) continue;
        const double t = grid(*j);
        const double s = params[i];
        const double reported_t = (s > R_ && s < L - R_) ? s : t;
        explore_fiber(path[i], to_segment, scratch, [&](Vertex x, double dyx) {
          if (to_segment[x] >= D_) {
            Violation cand{to_segment[x], dyx - to_segment[x], *j, x, path[i], reported_t};
            if (!worst || cand < *worst) worst = cand;
          }
        });
      }
    }
    return worst;
  }

 private:
  double grid(std::size_t j) const { return R_ + static_cast<double>(j) * t_step_; }

  /// First grid point t_j in (R, L - R) whose nearest path vertex is p_i
  /// (ties to the smaller parameter), if any.
  std::optional<std::size_t> first_grid_point(std::span<const double> params, std::size_t i) const {
    const std::size_t last = params.size() - 1;
    const double L = params.back();
    auto after_lower = [&](double t) { return i == 0 || t - params[i - 1] > params[i] - t; };
    auto before_upper = [&](double t) { return i == last || t - params[i] <= params[i + 1] - t; };
    std::size_t j = 1;
    if (i > 0) {
      const double estimate = std::floor((0.5 * (params[i - 1] + params[i]) - R_) / t_step_) - 1.0;
      if (estimate > 1.0) j = static_cast<std::size_t>(estimate);
    }
    while (!after_lower(grid(j))) ++j;
    const double t = grid(j);
    if (!(t < L - R_) || !before_upper(t)) return std::nullopt;
    return j;
  }

  bool in_fiber(double to_segment, double from_base) const {
    return to_segment + roundoff_slack(to_segment, from_base) >= from_base - tol_;
  }

  // The widened fiber {x : d(x, r) >= d(x, y) - tol} contains every vertex on
  // a shortest path from y to any of its members, so a search from y that only
  // expands members reaches all of them.
  template <typename Visit>
  void explore_fiber(Vertex y, std::span<const double> to_segment, WorkerScratch& scratch, Visit&& visit) const {
    scratch.reset(space_.size());
    const auto mark = scratch.current;
    if (space_.dense()) {
      auto row = space_.row(y);
      scratch.queue.clear();
      scratch.queue.push_back(y);
      scratch.stamp[y] = mark;
      for (std::size_t head = 0; head < scratch.queue.size(); ++head) {
        Vertex w = scratch.queue[head];
        visit(w, row[w]);
        for (const auto& arc : space_.neighbors(w)) {
          if (scratch.stamp[arc.to] == mark) continue;
          scratch.stamp[arc.to] = mark;
          if (in_fiber(to_segment[arc.to], row[arc.to])) scratch.queue.push_back(arc.to);
        }
      }
      return;
    }
    using Item = std::pair<double, Vertex>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
    auto relax = [&](Vertex w, double d) {
      if (scratch.stamp[w] != mark || d < scratch.dist[w]) {
        scratch.stamp[w] = mark;
        scratch.dist[w] = d;
        heap.emplace(d, w);
      }
    };
    relax(y, 0.0);
    while (!heap.empty()) {
      auto [d, w] = heap.top();
      heap.pop();
      if (d > scratch.dist[w]) continue;
      if (!in_fiber(to_segment[w], d)) continue;
      visit(w, d);
      for (const auto& arc : space_.neighbors(w)) relax(arc.to, d + arc.length);
    }
  }

  const FiniteGeodesicSpace& space_;
  double R_, D_, t_step_, tol_;
};

struct Best {
  std::mutex mutex;
  std::optional<std::pair<PairKey, Violation>> value;

  bool improves(const PairKey& key) {
    std::lock_guard lock(mutex);
    return !value || key < value->first;
  }
  void offer(const PairKey& key, const Violation& v) {
    std::lock_guard lock(mutex);
    if (!value || key < value->first) value = std::make_pair(key, v);
  }
};

/// Memory allowed for the per-depth distance arrays of one tree walk.
inline constexpr std::size_t kTreeLevelBytes = std::size_t{256} << 20;

/// Checks every canonical segment ending at `root` (pairs u < root) by walking
/// the tree of canonical next hops toward root. d(., path) is maintained one
/// level at a time as an elementwise minimum of distance rows. Subtrees deeper
/// than the level budget are handed to `fallback` pair by pair.
template <typename Fallback>
void check_root_tree(const FiniteGeodesicSpace& space, const ThinChecker& checker, Vertex root, double R, double D,
                     Best& best, WorkerScratch& scratch, Fallback&& fallback) {
  const std::size_t n = space.size();
  const std::size_t max_depth = std::max<std::size_t>(2, kTreeLevelBytes / (sizeof(double) * n));
  auto root_row = space.row(root);
  std::vector<Vertex> parent(n, root);
  std::vector<double> parent_len(n, 0.0);
  std::vector<std::size_t> child_count(n + 1, 0);
  for (Vertex c = 0; c < n; ++c) {
    if (c == root) continue;
    parent[c] = next_hop(space, c, root_row);
    parent_len[c] = *space.edge_length(c, parent[c]);
    ++child_count[parent[c] + 1];
  }
  std::vector<std::size_t> child_offset(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) child_offset[i + 1] = child_offset[i] + child_count[i + 1];
  std::vector<Vertex> children(n > 0 ? n - 1 : 0);
  {
    std::vector<std::size_t> fill(child_offset.begin(), child_offset.end() - 1);
    for (Vertex c = 0; c < n; ++c)
      if (c != root) children[fill[parent[c]]++] = c;
  }
  auto kids = [&](Vertex v) {
    return std::span<const Vertex>(children.data() + child_offset[v], children.data() + child_offset[v + 1]);
  };

  // Subtrees worth visiting: those containing a qualifying start vertex.
  std::vector<Vertex> order;
  order.reserve(n);
  order.push_back(root);
  for (std::size_t i = 0; i < order.size(); ++i)
    for (Vertex c : kids(order[i])) order.push_back(c);
  // sub_max[c]: longest qualifying segment starting in the subtree of c.
  std::vector<double> sub_max(n, -1.0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    Vertex c = *it;
    if (c < root && root_row[c] > 2.0 * R) sub_max[c] = std::max(sub_max[c], root_row[c]);
    if (c != root) sub_max[parent[c]] = std::max(sub_max[parent[c]], sub_max[c]);
  }
  auto worth = [&](Vertex c) { return sub_max[c] >= 0.0 && best.improves({sub_max[c], 0, 0}); };
  if (!worth(root)) return;

  auto& levels = scratch.levels;
  std::vector<double> level_max;
  std::vector<Vertex> stack_path;  // root ... current
  struct Frame {
    Vertex v;
    std::size_t next_child;
  };
  std::vector<Frame> frames;
  std::vector<Vertex> path;
  std::vector<double> params;

  auto enter = [&](Vertex v) {
    const std::size_t depth = stack_path.size();
    if (levels.size() <= depth) levels.emplace_back(n);
    if (level_max.size() <= depth) level_max.push_back(0.0);
    auto row = space.row(v);
    auto& cur = levels[depth];
    double mx = 0.0;
    if (depth == 0) {
      for (std::size_t x = 0; x < n; ++x) {
        cur[x] = row[x];
        mx = std::max(mx, cur[x]);
      }
    } else {
      const auto& prev = levels[depth - 1];
      for (std::size_t x = 0; x < n; ++x) {
        cur[x] = std::min(prev[x], row[x]);
        mx = std::max(mx, cur[x]);
      }
    }
    level_max[depth] = mx;
    stack_path.push_back(v);
    frames.push_back({v, 0});

    if (v < root && root_row[v] > 2.0 * R && level_max[depth] >= D) {
      PairKey key{root_row[v], v, root};
      if (!best.improves(key)) return;
      path.assign(stack_path.rbegin(), stack_path.rend());
      params.assign(path.size(), 0.0);
      for (std::size_t i = 1; i < path.size(); ++i) params[i] = params[i - 1] + parent_len[path[i - 1]];
      if (auto viol = checker.check(path, params, cur, scratch)) best.offer(key, *viol);
    }
  };

  enter(root);
  while (!frames.empty()) {
    auto& f = frames.back();
    auto ks = kids(f.v);
    while (f.next_child < ks.size() && !worth(ks[f.next_child])) ++f.next_child;
    if (f.next_child == ks.size()) {
      frames.pop_back();
      stack_path.pop_back();
      continue;
    }
    Vertex c = ks[f.next_child++];
    if (stack_path.size() < max_depth) {
      enter(c);
      continue;
    }
    std::vector<Vertex> pending{c};
    while (!pending.empty()) {
      Vertex w = pending.back();
      pending.pop_back();
      if (w < root && root_row[w] > 2.0 * R) fallback(PairKey{root_row[w], w, root});
      for (Vertex k : kids(w))
        if (worth(k)) pending.push_back(k);
    }
  }
}

}  // namespace detail

/// Decides (R, D)-thinness over canonical segments. The witness on failure is
/// taken from the first failing segment in (longest, then lexicographic pair)
/// order and is that segment's most severe violation.
inline ThinnessReport thin_check(const FiniteGeodesicSpace& space, double R, double D,
                                 const ThinCheckOptions& opts = {}) {
  require(D > 0.0 && R > 0.0, ErrorCode::BadParameters, "R and D must be positive");
  require(R >= 20.0 * D * (1.0 - 1e-12), ErrorCode::BadParameters, "thinness requires R >= 20 D");
  ThinnessReport report;
  report.R = R;
  report.D = D;
  report.t_step = opts.t_step > 0.0 ? opts.t_step : D / 4.0;
  require(report.t_step <= D / 4.0 * (1.0 + 1e-12), ErrorCode::BadParameters, "t_step must be at most D/4");
  report.tol = opts.tol >= 0.0 ? opts.tol : space.scale();

  const std::size_t n = space.size();
  const bool budgeted = opts.segment_budget.has_value();
  const std::size_t budget = budgeted ? *opts.segment_budget : 0;

  // Count qualifying pairs; with a budget keep the leading `budget` of them.
  // Rows are visited in decreasing order of an eccentricity upper bound, so
  // the scan can stop once no unvisited row can reach the kept set; the count
  // is then only a lower bound.
  require(!budgeted || budget > 0, ErrorCode::BadParameters, "segment budget must be positive");
  std::size_t total = 0;
  std::priority_queue<detail::PairKey> kept;  // top() is the worst kept key
  std::vector<std::pair<double, Vertex>> order(n);
  if (budgeted) {
    std::vector<double> upper(n);
    if (space.dense()) {
      for (Vertex u = 0; u < n; ++u) upper[u] = detail::eccentricity(space.row(u));
    } else {
      upper = detail::bounded_diameter(space).upper;
    }
    for (Vertex u = 0; u < n; ++u) order[u] = {-upper[u], u};
    std::sort(order.begin(), order.end());
  } else {
    for (Vertex u = 0; u < n; ++u) order[u] = {0.0, u};
  }
  std::vector<char> visited(n, 0);
  report.qualifying_pairs_exact = true;
  for (const auto& [neg_upper, u] : order) {
    if (budgeted && total > budget && -neg_upper < kept.top().length) {
      report.qualifying_pairs_exact = false;
      break;
    }
    visited[u] = 1;
    auto row = space.row(u);
    for (Vertex v = 0; v < n; ++v) {
      if (visited[v] || !(row[v] > 2.0 * R)) continue;
      ++total;
      if (!budgeted) continue;
      detail::PairKey key{row[v], std::min(u, v), std::max(u, v)};
      if (kept.size() < budget) {
        kept.push(key);
      } else if (key < kept.top()) {
        kept.pop();
        kept.push(key);
      }
    }
  }
  report.qualifying_pairs = total;

  detail::ThinChecker checker(space, R, D, report.t_step, report.tol);
  detail::Best best;
  std::vector<detail::WorkerScratch> scratch(worker_count(n));

  auto check_pair = [&](const detail::PairKey& key, unsigned worker) {
    if (!best.improves(key)) return;
    auto seg = shortest_segment(space, key.u, key.v);
    auto to_seg = space.distances_from(seg.path);
    if (*std::max_element(to_seg.begin(), to_seg.end()) < D) return;
    if (auto viol = checker.check(seg.path, seg.params, to_seg, scratch[worker])) best.offer(key, *viol);
  };

  if (budgeted && total > budget) {
    require(opts.allow_sampling, ErrorCode::BudgetExceeded,
            "more than " + std::to_string(budget) + " segments qualify and sampling is disabled");
    std::vector<detail::PairKey> sample;
    while (!kept.empty()) {
      sample.push_back(kept.top());
      kept.pop();
    }
    std::reverse(sample.begin(), sample.end());
    report.sampled = true;
    report.segments_checked = sample.size();
    scratch.resize(worker_count(sample.size()));
    parallel_for(sample.size(), [&](std::size_t i, unsigned w) { check_pair(sample[i], w); });
  } else {
    report.segments_checked = total;
    if (space.dense()) {
      // Far-reaching roots first: they own the longest segments, whose
      // violations let the remaining roots prune early.
      std::vector<std::pair<double, Vertex>> roots(n);
      for (Vertex v = 0; v < n; ++v) roots[v] = {-detail::eccentricity(space.row(v)), v};
      std::sort(roots.begin(), roots.end());
      scratch.resize(worker_count(n));
      parallel_for(n, [&](std::size_t i, unsigned w) {
        detail::check_root_tree(space, checker, roots[i].second, R, D, best, scratch[w],
                                [&](const detail::PairKey& key) { check_pair(key, w); });
      });
    } else {
      scratch.resize(worker_count(n));
      parallel_for(n, [&](std::size_t u, unsigned w) {
        auto row = space.row(static_cast<Vertex>(u));
        for (Vertex v = static_cast<Vertex>(u) + 1; v < n; ++v)
          if (row[v] > 2.0 * R) check_pair({row[v], static_cast<Vertex>(u), v}, w);
      });
    }
  }

  if (best.value) {
    const auto& [key, viol] = *best.value;
    report.pass = false;
    report.witness = ThinnessWitness{shortest_segment(space, key.u, key.v), viol.t, viol.y, viol.x, viol.dist_x_r};
  }
  return report;
}

/// Re-derives a failure witness from metric primitives alone.
inline bool replay_witness(const FiniteGeodesicSpace& space, const ThinnessReport& report) {
  if (report.pass || !report.witness) return false;
  const auto& w = *report.witness;
  const auto& seg = w.segment;
  if (seg.path.size() < 2) return false;
  auto canonical = shortest_segment(space, seg.start(), seg.end());
  if (canonical.path != seg.path) return false;
  const double L = canonical.length();
  if (!(L > 2.0 * report.R)) return false;
  if (!(w.t > report.R && w.t < L - report.R)) return false;
  Vertex y = canonical.path[canonical.nearest_index(w.t)];
  if (y != w.fiber_base) return false;
  auto support = canonical.support();
  if (!inverse_project(space, support, y, report.tol).contains(w.x)) return false;
  auto to_seg = distance_to_set(space, support);
  return same_length(to_seg[w.x], w.dist_x_r) && w.dist_x_r >= report.D;
}

struct ThinnessProfileEntry {
  double R = 0.0;
  /// Least passing D on the grid; unset when no admissible grid value passes.
  std::optional<double> D_min;
  /// Reports for every D evaluated during the search.
  std::vector<ThinnessReport> evaluated;
};

struct ThinnessProfile {
  std::vector<ThinnessProfileEntry> entries;
};

/// For each R, binary search over the admissible (R >= 20 D) part of D_grid
/// for the least passing D. Passing is monotone in D for a fixed segment set.
inline ThinnessProfile thinness_profile(const FiniteGeodesicSpace& space, std::span<const double> R_grid,
                                        std::span<const double> D_grid, const ThinCheckOptions& opts = {}) {
  require(!R_grid.empty() && !D_grid.empty(), ErrorCode::BadParameters, "profile grids must be non-empty");
  require(std::is_sorted(R_grid.begin(), R_grid.end()) && std::is_sorted(D_grid.begin(), D_grid.end()),
          ErrorCode::BadParameters, "profile grids must be sorted");
  require(R_grid.front() > 0.0 && D_grid.front() > 0.0, ErrorCode::BadParameters, "profile grids must be positive");
  ThinnessProfile profile;
  for (double R : R_grid) {
    std::vector<double> admissible;
    for (double D : D_grid)
      if (R >= 20.0 * D * (1.0 - 1e-12)) admissible.push_back(D);
    require(!admissible.empty(), ErrorCode::BadParameters,
            "no D in the grid satisfies R >= 20 D for R = " + std::to_string(R));
    ThinnessProfileEntry entry;
    entry.R = R;
    std::size_t lo = 0, hi = admissible.size();  // answer in [lo, hi]; hi = none
    while (lo < hi) {
      std::size_t mid = (lo + hi) / 2;
      ThinCheckOptions o = opts;
      if (o.t_step > admissible[mid] / 4.0) o.t_step = 0.0;
      auto rep = thin_check(space, R, admissible[mid], o);
      bool pass = rep.pass;
      entry.evaluated.push_back(std::move(rep));
      if (pass) hi = mid;
      else lo = mid + 1;
    }
    if (lo < admissible.size()) entry.D_min = admissible[lo];
    profile.entries.push_back(std::move(entry));
  }
  return profile;
}

enum class NetCase { CaseA, CaseB, Violation };

struct TrichotomyResult {
  NetCase outcome = NetCase::Violation;
  /// Parameter of l(t) in the projection of alpha's start.
  double t = 0.0;
  bool case_a = false;
  bool case_b = false;
  PointSet projection;
};

/// Tests whether the projection of the walk alpha onto the segment l contains
/// a 3D-net of [l(R), l(t)] (case A) or of [l(t), l(L - R)] (case B), where
/// alpha starts over the middle of l and ends over one of its R-ends.
inline TrichotomyResult net_trichotomy_check(const FiniteGeodesicSpace& space, const DiscreteSegment& l,
                                             std::span<const Vertex> alpha, double R, double D) {
  const double L = l.length();
  require(L > 2.0 * R, ErrorCode::HypothesisNotMet, "segment must be longer than 2R");
  require(!alpha.empty(), ErrorCode::HypothesisNotMet, "alpha is empty");
  for (std::size_t i = 1; i < alpha.size(); ++i) {
    require(alpha[i] == alpha[i - 1] || space.edge_length(alpha[i - 1], alpha[i]).has_value(),
            ErrorCode::HypothesisNotMet, "alpha must be a walk along edges");
  }
  auto support = l.support();
  std::vector<double> param_of(space.size(), -1.0);
  for (std::size_t i = 0; i < l.path.size(); ++i) param_of[l.path[i]] = l.params[i];

  TrichotomyResult result;
  bool start_ok = false;
  for (Vertex y : project(space, support, alpha.front())) {
    double s = param_of[y];
    if (s > R && s < L - R) {
      if (!start_ok || s < result.t) result.t = s;
      start_ok = true;
    }
  }
  require(start_ok, ErrorCode::HypothesisNotMet, "alpha(0) does not project into the middle of l");
  bool end_ok = false;
  for (Vertex y : project(space, support, alpha.back())) {
    double s = param_of[y];
    if (s <= R || s >= L - R) end_ok = true;
  }
  require(end_ok, ErrorCode::HypothesisNotMet, "alpha's endpoint does not project into an R-end of l");

  result.projection = project_all(space, support, alpha);
  std::vector<Vertex> left, right;
  for (std::size_t i = 0; i < l.path.size(); ++i) {
    double s = l.params[i];
    if (s >= R && s <= result.t) left.push_back(l.path[i]);
    if (s >= result.t && s <= L - R) right.push_back(l.path[i]);
  }
  result.case_a = is_net(space, result.projection, PointSet(left), 3.0 * D);
  result.case_b = is_net(space, result.projection, PointSet(right), 3.0 * D);
  result.outcome = result.case_a ? NetCase::CaseA : (result.case_b ? NetCase::CaseB : NetCase::Violation);
  return result;
}

}  // namespace thinspace
