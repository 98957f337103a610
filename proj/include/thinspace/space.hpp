#pragma once

// Finite geodesic spaces: connected weighted graphs with their shortest-path
// metric. Small spaces keep the full distance matrix; large ones compute rows
// on demand behind an LRU cache.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <list>
#include <memory>
#include <mutex>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "thinspace/errors.hpp"
#include "thinspace/parallel.hpp"

namespace thinspace {

using Vertex = std::uint32_t;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Relative slack used wherever two path sums must be compared for equality.
inline constexpr double kRoundoff = 1e-10;

inline double roundoff_slack(double a, double b) {
  return kRoundoff * std::max({1.0, std::abs(a), std::abs(b)});
}

inline bool same_length(double a, double b) {
  return std::abs(a - b) <= roundoff_slack(a, b);
}

struct EdgeSpec {
  std::string u;
  std::string v;
  double length = 0.0;
};

struct Arc {
  Vertex to;
  double length;
};

struct SpaceOptions {
  /// Spaces with at most this many vertices store the full distance matrix.
  std::size_t dense_limit = 20000;
  /// Rows kept by the on-demand cache above dense_limit.
  std::size_t row_cache = 64;
};

/// A row of the distance matrix. Keeps cached storage alive while in use.
class DistanceRow {
 public:
  DistanceRow() = default;
  explicit DistanceRow(std::span<const double> data) : data_(data) {}
  explicit DistanceRow(std::shared_ptr<const std::vector<double>> owned)
      : owned_(std::move(owned)), data_(*owned_) {}

  double operator[](Vertex v) const { return data_[v]; }
  std::span<const double> values() const { return data_; }
  std::size_t size() const { return data_.size(); }

 private:
  std::shared_ptr<const std::vector<double>> owned_;
  std::span<const double> data_;
};

namespace detail {

class RowCache {
 public:
  explicit RowCache(std::size_t capacity) : capacity_(std::max<std::size_t>(capacity, 1)) {}

  template <typename Compute>
  std::shared_ptr<const std::vector<double>> get(Vertex v, Compute&& compute) {
    {
      std::lock_guard lock(mutex_);
      if (auto it = index_.find(v); it != index_.end()) {
        order_.splice(order_.begin(), order_, it->second);
        return it->second->second;
      }
    }
    auto row = std::make_shared<const std::vector<double>>(compute());
    std::lock_guard lock(mutex_);
    if (auto it = index_.find(v); it != index_.end()) return it->second->second;
    order_.emplace_front(v, row);
    index_[v] = order_.begin();
    if (order_.size() > capacity_) {
      index_.erase(order_.back().first);
      order_.pop_back();
    }
    return row;
  }

 private:
  using Entry = std::pair<Vertex, std::shared_ptr<const std::vector<double>>>;
  std::size_t capacity_;
  std::mutex mutex_;
  std::list<Entry> order_;
  std::unordered_map<Vertex, std::list<Entry>::iterator> index_;
};

}  // namespace detail

class FiniteGeodesicSpace {
 public:
  /// Builds from explicit vertex ids (index order = id order given) and edges
  /// naming those ids. Duplicate edges keep the shorter length and record a
  /// warning.
  static FiniteGeodesicSpace build(std::vector<std::string> ids,
                                   std::span<const EdgeSpec> edges,
                                   SpaceOptions options = {}) {
    require(!edges.empty(), ErrorCode::BadParameters, "edge list is empty");
    FiniteGeodesicSpace space;
    space.options_ = options;
    space.ids_ = std::move(ids);
    for (std::size_t i = 0; i < space.ids_.size(); ++i) {
      auto [it, inserted] = space.lookup_.emplace(space.ids_[i], static_cast<Vertex>(i));
      require(inserted, ErrorCode::Parse, "duplicate vertex id '" + space.ids_[i] + "'");
    }
    auto resolve = [&](const std::string& id) {
      auto it = space.lookup_.find(id);
      require(it != space.lookup_.end(), ErrorCode::UnknownVertex,
              "edge references unknown vertex '" + id + "'");
      return it->second;
    };

    std::unordered_map<std::uint64_t, std::size_t> seen;
    for (const auto& e : edges) {
      require(std::isfinite(e.length) && e.length > 0.0, ErrorCode::NonPositiveEdge,
              "edge (" + e.u + ", " + e.v + ") has non-positive length");
      Vertex a = resolve(e.u);
      Vertex b = resolve(e.v);
      require(a != b, ErrorCode::SelfLoop, "self-loop at vertex '" + e.u + "'");
      if (a > b) std::swap(a, b);
      std::uint64_t key = (static_cast<std::uint64_t>(a) << 32) | b;
      if (auto it = seen.find(key); it != seen.end()) {
        auto& kept = space.edges_[it->second];
        space.warnings_.push_back("duplicate edge (" + e.u + ", " + e.v + "); kept length " +
                                  std::to_string(std::min(kept.length, e.length)));
        kept.length = std::min(kept.length, e.length);
        continue;
      }
      seen.emplace(key, space.edges_.size());
      space.edges_.push_back({a, b, e.length});
    }
    space.finish();
    return space;
  }

  /// Builds from an edge list alone; vertex ids are numbered by first appearance.
  static FiniteGeodesicSpace build(std::span<const EdgeSpec> edges, SpaceOptions options = {}) {
    std::vector<std::string> ids;
    std::unordered_map<std::string, bool> known;
    for (const auto& e : edges) {
      for (const auto* id : {&e.u, &e.v}) {
        if (known.emplace(*id, true).second) ids.push_back(*id);
      }
    }
    return build(std::move(ids), edges, options);
  }

  struct IndexedEdge {
    Vertex u;
    Vertex v;
    double length;
  };

  std::size_t size() const { return ids_.size(); }
  const std::string& id(Vertex v) const { return ids_.at(v); }
  const std::vector<std::string>& ids() const { return ids_; }
  std::optional<Vertex> find(const std::string& id) const {
    auto it = lookup_.find(id);
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
  }
  Vertex vertex(const std::string& id) const {
    auto v = find(id);
    require(v.has_value(), ErrorCode::UnknownVertex, "unknown vertex '" + id + "'");
    return *v;
  }

  /// Neighbors sorted by vertex index.
  std::span<const Arc> neighbors(Vertex v) const {
    return {arcs_.data() + offsets_[v], arcs_.data() + offsets_[v + 1]};
  }
  const std::vector<IndexedEdge>& edges() const { return edges_; }
  std::optional<double> edge_length(Vertex u, Vertex v) const {
    for (const auto& arc : neighbors(u))
      if (arc.to == v) return arc.length;
    return std::nullopt;
  }

  /// Maximum edge length.
  double scale() const { return scale_; }
  bool dense() const { return !matrix_.empty(); }
  const std::vector<std::string>& warnings() const { return warnings_; }

  DistanceRow row(Vertex v) const {
    if (dense()) return DistanceRow(std::span<const double>(matrix_.data() + std::size_t(v) * size(), size()));
    return DistanceRow(cache_->get(v, [&] { return single_source(v); }));
  }

  double dist(Vertex u, Vertex v) const {
    if (dense()) return matrix_[std::size_t(u) * size() + v];
    return row(u)[v];
  }

  /// Distance from the set `sources` to every vertex (multi-source Dijkstra).
  std::vector<double> distances_from(std::span<const Vertex> sources) const {
    std::vector<double> d(size(), kInfinity);
    std::vector<std::pair<Vertex, double>> seeds;
    seeds.reserve(sources.size());
    for (Vertex s : sources) seeds.emplace_back(s, 0.0);
    run_dijkstra(seeds, d);
    return d;
  }

  /// Multi-source Dijkstra with per-source initial offsets.
  std::vector<double> distances_from_seeded(std::span<const std::pair<Vertex, double>> seeds) const {
    std::vector<double> d(size(), kInfinity);
    run_dijkstra(seeds, d);
    return d;
  }

  std::vector<double> single_source(Vertex source) const {
    std::vector<double> d(size(), kInfinity);
    std::pair<Vertex, double> seed{source, 0.0};
    run_dijkstra(std::span(&seed, 1), d);
    return d;
  }

 private:
  FiniteGeodesicSpace() = default;

  void finish() {
    const std::size_t n = ids_.size();
    std::vector<std::size_t> degree(n + 1, 0);
    scale_ = 0.0;
    for (const auto& e : edges_) {
      ++degree[e.u];
      ++degree[e.v];
      scale_ = std::max(scale_, e.length);
    }
    offsets_.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) offsets_[i + 1] = offsets_[i] + degree[i];
    arcs_.resize(offsets_[n]);
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (const auto& e : edges_) {
      arcs_[fill[e.u]++] = {e.v, e.length};
      arcs_[fill[e.v]++] = {e.u, e.length};
    }
    for (std::size_t i = 0; i < n; ++i) {
      std::sort(arcs_.begin() + offsets_[i], arcs_.begin() + offsets_[i + 1],
                [](const Arc& a, const Arc& b) { return a.to < b.to; });
    }

    // connectivity
    std::vector<char> seen(n, 0);
    std::vector<Vertex> stack{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      for (const auto& arc : neighbors(v)) {
        if (!seen[arc.to]) {
          seen[arc.to] = 1;
          ++reached;
          stack.push_back(arc.to);
        }
      }
    }
    if (reached != n) {
      for (std::size_t i = 0; i < n; ++i) {
        if (!seen[i]) {
          throw Error(ErrorCode::DisconnectedGraph,
                      "graph is disconnected: vertex '" + ids_[i] + "' unreachable from '" + ids_[0] + "'");
        }
      }
    }

    if (n <= options_.dense_limit) {
      matrix_.assign(n * n, kInfinity);
      parallel_for(n, [&](std::size_t s, unsigned) {
        std::span<double> out(matrix_.data() + s * n, n);
        std::pair<Vertex, double> seed{static_cast<Vertex>(s), 0.0};
        run_dijkstra(std::span(&seed, 1), out);
      });
      // Both directions are genuine path sums; keep the smaller so the matrix
      // is exactly symmetric.
      for (std::size_t i = 0; i < n; ++i) {
        matrix_[i * n + i] = 0.0;
        for (std::size_t j = i + 1; j < n; ++j) {
          double m = std::min(matrix_[i * n + j], matrix_[j * n + i]);
          matrix_[i * n + j] = m;
          matrix_[j * n + i] = m;
        }
      }
    } else {
      cache_ = std::make_shared<detail::RowCache>(options_.row_cache);
    }
  }

  template <typename Out>
  void run_dijkstra(std::span<const std::pair<Vertex, double>> seeds, Out& d) const {
    using Item = std::pair<double, Vertex>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
    for (const auto& [s, offset] : seeds) {
      if (offset < d[s]) {
        d[s] = offset;
        heap.emplace(offset, s);
      }
    }
    while (!heap.empty()) {
      auto [du, u] = heap.top();
      heap.pop();
      if (du > d[u]) continue;
      for (const auto& arc : neighbors(u)) {
        double nd = du + arc.length;
        if (nd < d[arc.to]) {
          d[arc.to] = nd;
          heap.emplace(nd, arc.to);
        }
      }
    }
  }

  SpaceOptions options_;
  std::vector<std::string> ids_;
  std::unordered_map<std::string, Vertex> lookup_;
  std::vector<IndexedEdge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<Arc> arcs_;
  double scale_ = 0.0;
  std::vector<double> matrix_;
  std::shared_ptr<detail::RowCache> cache_;
  std::vector<std::string> warnings_;
};

/// Convenience wrapper mirroring the edge-list entry point.
inline FiniteGeodesicSpace build_space(std::span<const EdgeSpec> edges, SpaceOptions options = {}) {
  return FiniteGeodesicSpace::build(edges, options);
}

}  // namespace thinspace
