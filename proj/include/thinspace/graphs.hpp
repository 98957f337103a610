#pragma once

// Generators for the graph families used throughout the tests and the CLI
// demos. Vertex numbering is part of the contract: tie-breaking follows it.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "thinspace/space.hpp"

namespace thinspace {

struct GraphSpec {
  std::vector<std::string> ids;
  std::vector<EdgeSpec> edges;

  FiniteGeodesicSpace build(SpaceOptions options = {}) const {
    return FiniteGeodesicSpace::build(ids, edges, options);
  }
  void add_edge(std::size_t u, std::size_t v, double length) { edges.push_back({ids[u], ids[v], length}); }
};

namespace graphs {

inline std::vector<std::string> numbered(const std::string& prefix, std::size_t n) {
  std::vector<std::string> ids;
  ids.reserve(n);
  for (std::size_t i = 0; i < n; ++i) ids.push_back(prefix + std::to_string(i));
  return ids;
}

/// P_n: n vertices v0..v{n-1} in a line.
inline GraphSpec path(std::size_t n, double edge = 1.0) {
  GraphSpec g{numbered("v", n), {}};
  for (std::size_t i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1, edge);
  return g;
}

/// C_n: n vertices around a cycle.
inline GraphSpec cycle(std::size_t n, double edge = 1.0) {
  GraphSpec g = path(n, edge);
  g.add_edge(n - 1, 0, edge);
  return g;
}

/// Three legs of `leg` unit edges from a center. Vertex 0 is the center; leg
/// j (0-based) holds vertices 1 + j*leg ... (j+1)*leg, ordered outward.
inline GraphSpec tripod(std::size_t leg, double edge = 1.0) {
  GraphSpec g;
  g.ids.push_back("o");
  const char names[3] = {'a', 'b', 'c'};
  for (int j = 0; j < 3; ++j)
    for (std::size_t i = 1; i <= leg; ++i) g.ids.push_back(std::string(1, names[j]) + std::to_string(i));
  for (std::size_t j = 0; j < 3; ++j) {
    g.add_edge(0, 1 + j * leg, edge);
    for (std::size_t i = 1; i < leg; ++i) g.add_edge(j * leg + i, j * leg + i + 1, edge);
  }
  return g;
}

inline std::size_t tripod_tip(std::size_t leg, std::size_t j) { return (j + 1) * leg; }

/// rows x cols grid; vertex (r, c) has index r*cols + c.
inline GraphSpec grid(std::size_t rows, std::size_t cols, double edge = 1.0) {
  GraphSpec g;
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) g.ids.push_back("g" + std::to_string(r) + "_" + std::to_string(c));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (c + 1 < cols) g.add_edge(r * cols + c, r * cols + c + 1, edge);
      if (r + 1 < rows) g.add_edge(r * cols + c, (r + 1) * cols + c, edge);
    }
  }
  return g;
}

/// C_ring x P_len (closed = false) or C_ring x C_len (closed = true), unit
/// product adjacency. Vertex (k, j) -- axial index k, ring index j -- has
/// index k*ring + j.
inline GraphSpec ring_product(std::size_t ring, std::size_t len, bool closed, double edge = 1.0) {
  GraphSpec g;
  for (std::size_t k = 0; k < len; ++k)
    for (std::size_t j = 0; j < ring; ++j) g.ids.push_back("r" + std::to_string(k) + "_" + std::to_string(j));
  for (std::size_t k = 0; k < len; ++k) {
    for (std::size_t j = 0; j < ring; ++j) {
      std::size_t v = k * ring + j;
      if (ring > 2 || j + 1 < ring) g.add_edge(v, k * ring + (j + 1) % ring, edge);
      if (k + 1 < len) g.add_edge(v, (k + 1) * ring + j, edge);
      else if (closed) g.add_edge(v, j, edge);
    }
  }
  return g;
}

inline GraphSpec cylinder(std::size_t ring, std::size_t len, double edge = 1.0) {
  return ring_product(ring, len, false, edge);
}
inline GraphSpec torus(std::size_t ring, std::size_t len, double edge = 1.0) {
  return ring_product(ring, len, true, edge);
}

/// Outer cycle of n_outer unit edges, inner cycle of n_inner unit edges, one
/// rung of length `rung` joining outer vertex 0 to inner vertex 0.
inline GraphSpec rung_cycles(std::size_t n_outer, std::size_t n_inner, double rung) {
  GraphSpec g;
  for (std::size_t i = 0; i < n_outer; ++i) g.ids.push_back("out" + std::to_string(i));
  for (std::size_t i = 0; i < n_inner; ++i) g.ids.push_back("in" + std::to_string(i));
  for (std::size_t i = 0; i < n_outer; ++i) g.add_edge(i, (i + 1) % n_outer, 1.0);
  for (std::size_t i = 0; i < n_inner; ++i) g.add_edge(n_outer + i, n_outer + (i + 1) % n_inner, 1.0);
  g.add_edge(0, n_outer, rung);
  return g;
}

/// Random connected graph: a random spanning tree plus `extra` random edges,
/// lengths uniform in [lo, hi].
inline GraphSpec random_connected(std::size_t n, std::size_t extra, double lo, double hi, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> length(lo, hi);
  GraphSpec g{numbered("v", n), {}};
  for (std::size_t i = 1; i < n; ++i) {
    std::uniform_int_distribution<std::size_t> parent(0, i - 1);
    g.add_edge(parent(rng), i, length(rng));
  }
  std::uniform_int_distribution<std::size_t> any(0, n - 1);
  for (std::size_t e = 0; e < extra; ++e) {
    std::size_t a = any(rng), b = any(rng);
    if (a != b) g.add_edge(a, b, length(rng));
  }
  return g;
}

}  // namespace graphs
}  // namespace thinspace
