#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "thinspace/graphs.hpp"
#include "thinspace/space.hpp"

namespace thinspace_oracle {

using thinspace::GraphSpec;
using thinspace::kInfinity;
namespace graphs = thinspace::graphs;

// Brute-force reference: Floyd-Warshall distances, its own canonical-path
// walk, and a direct scan of every grid parameter and every vertex.
struct Oracle {
  std::size_t n = 0;
  std::vector<std::vector<double>> d;
  std::vector<std::map<std::size_t, double>> adj;

  explicit Oracle(const GraphSpec& g) {
    n = g.ids.size();
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < n; ++i) index[g.ids[i]] = i;
    adj.resize(n);
    d.assign(n, std::vector<double>(n, kInfinity));
    for (std::size_t i = 0; i < n; ++i) d[i][i] = 0.0;
    for (const auto& e : g.edges) {
      std::size_t a = index.at(e.u), b = index.at(e.v);
      auto put = [&](std::size_t x, std::size_t y) {
        auto it = adj[x].find(y);
        if (it == adj[x].end() || e.length < it->second) adj[x][y] = e.length;
      };
      put(a, b);
      put(b, a);
    }
    for (std::size_t a = 0; a < n; ++a)
      for (auto [b, len] : adj[a]) d[a][b] = std::min(d[a][b], len);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  }

  static bool close(double a, double b) { return std::abs(a - b) <= 1e-10 * std::max({1.0, std::abs(a), std::abs(b)}); }

  std::vector<std::size_t> path(std::size_t u, std::size_t v) const {
    std::vector<std::size_t> p{u};
    while (p.back() != v) {
      std::size_t c = p.back();
      for (auto [w, len] : adj[c]) {  // std::map iterates in index order
        if (close(len + d[w][v], d[c][v])) {
          p.push_back(w);
          break;
        }
      }
    }
    return p;
  }

  struct Result {
    bool pass = true;
    std::size_t u = 0, v = 0;
    double worst = 0.0;
  };

  Result check(double R, double D, double tol) const {
    const double step = D / 4.0;
    Result res;
    double best_len = -1.0;
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = u + 1; v < n; ++v) {
        if (!(d[u][v] > 2.0 * R)) continue;
        auto p = path(u, v);
        std::vector<double> params{0.0};
        for (std::size_t i = 1; i < p.size(); ++i) params.push_back(params.back() + adj[p[i - 1]].at(p[i]));
        const double L = params.back();
        double worst = -1.0;
        for (std::size_t j = 1; R + j * step < L - R; ++j) {
          double t = R + j * step;
          std::size_t yi = 0;
          for (std::size_t i = 1; i < p.size(); ++i)
            if (std::abs(params[i] - t) < std::abs(params[yi] - t)) yi = i;
          std::size_t y = p[yi];
          for (std::size_t x = 0; x < n; ++x) {
            double dk = kInfinity;
            for (auto q : p) dk = std::min(dk, d[x][q]);
            bool member = dk >= d[x][y] - tol || close(dk, d[x][y] - tol);
            if (member && dk >= D) worst = std::max(worst, dk);
          }
        }
        if (worst >= 0.0) {
          bool better = res.pass || d[u][v] > best_len;
          if (better) {
            res = {false, u, v, worst};
            best_len = d[u][v];
          }
        }
      }
    }
    return res;
  }
};

GraphSpec caterpillar(std::size_t spine, double hair, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  GraphSpec g = graphs::path(spine);
  std::uniform_int_distribution<std::size_t> at(0, spine - 1);
  for (int h = 0; h < 8; ++h) {
    g.ids.push_back("h" + std::to_string(h));
    g.add_edge(at(rng), g.ids.size() - 1, hair);
  }
  return g;
}

}  // namespace thinspace_oracle
