#pragma once

// Scale-picking Vitali cover of a nonnegative field on a uniform 1-D grid.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "thinspace/errors.hpp"

namespace thinspace {

/// values[i] lives on the cell centred at origin + i * spacing, of volume
/// `spacing`.
struct GridField {
  double origin = 0.0;
  double spacing = 1.0;
  std::vector<double> values;

  double center(std::size_t i) const { return origin + spacing * static_cast<double>(i); }
  double total() const {
    double s = 0.0;
    for (double v : values) s += v * spacing;
    return s;
  }
};

struct CoverBall {
  std::size_t cell = 0;
  double center = 0.0;
  /// Picked radius r_y; the cover uses 5 r_y.
  double radius = 0.0;
  double volume = 0.0;
};

struct ScalePickCover {
  std::vector<CoverBall> balls;
  double s = 0.5;
  double eta = 1.0;
  /// sum over balls of Vol(B_{5r}) (5r)^{-2s}.
  double weighted_sum = 0.0;
  /// weighted_sum <= (constant / eta) * integral of the field.
  double constant = 10.0;
  double total_integral = 0.0;
  bool empty() const { return balls.empty(); }
  bool bound_holds() const { return weighted_sum <= constant / eta * total_integral; }
};

/// Ratio bound Vol(B_{5r}) / Vol(B_r) on a uniform 1-D grid with r a
/// positive multiple m of the spacing: at most (10m + 1) / (m + 1) < 10 cells,
/// even when B_r is cut off by the end of the grid.
inline constexpr double kGridCoveringConstant = 10.0;

namespace detail {

struct GridBall {
  double volume = 0.0;
  double mass = 0.0;
};

/// Closed ball of m cells around cell i, clipped to the grid.
inline GridBall grid_ball(const GridField& f, const std::vector<double>& prefix, std::size_t i, std::size_t m) {
  const std::size_t lo = i >= m ? i - m : 0;
  const std::size_t hi = std::min(f.values.size() - 1, i + m);
  return {f.spacing * static_cast<double>(hi - lo + 1), prefix[hi + 1] - prefix[lo]};
}

}  // namespace detail

/// For every cell y, r_y is the largest grid radius r in [r_min, r_max]
/// (multiples of the spacing) with r^{2s} * avg_{B_r(y)} f >= eta, kept when
/// the supremum strictly exceeds eta. Balls are taken greedily by decreasing
/// r_y, then decreasing field value, then position, whenever B_{r_y} misses
/// every ball already taken.
inline ScalePickCover scale_pick_cover(const GridField& field, double s, double eta, double r_min, double r_max) {
  require(s > 0.0 && s < 1.0, ErrorCode::BadExponent, "s must lie in (0, 1)");
  require(eta > 0.0, ErrorCode::BadParameters, "eta must be positive");
  require(field.spacing > 0.0 && !field.values.empty(), ErrorCode::BadParameters, "empty or degenerate grid");
  require(r_min < r_max && r_min >= 0.0, ErrorCode::BadParameters, "need 0 <= r_min < r_max");
  for (double v : field.values) require(v >= 0.0 && std::isfinite(v), ErrorCode::BadParameters, "field must be nonnegative");

  ScalePickCover out;
  out.s = s;
  out.eta = eta;
  out.constant = kGridCoveringConstant;
  out.total_integral = field.total();

  const auto m_lo = static_cast<std::size_t>(std::max(1.0, std::ceil(r_min / field.spacing - 1e-12)));
  const auto m_hi = static_cast<std::size_t>(std::floor(r_max / field.spacing + 1e-12));
  std::vector<double> prefix(field.values.size() + 1, 0.0);
  for (std::size_t i = 0; i < field.values.size(); ++i) prefix[i + 1] = prefix[i] + field.values[i] * field.spacing;

  struct Pick {
    std::size_t cell, m;
  };
  std::vector<Pick> picks;
  for (std::size_t i = 0; i < field.values.size(); ++i) {
    double sup = 0.0;
    std::size_t best = 0;
    for (std::size_t m = m_lo; m <= m_hi; ++m) {
      auto b = detail::grid_ball(field, prefix, i, m);
      const double score = std::pow(static_cast<double>(m) * field.spacing, 2.0 * s) * b.mass / b.volume;
      sup = std::max(sup, score);
      if (score >= eta) best = m;
    }
    if (sup > eta) picks.push_back({i, best});
  }
  std::stable_sort(picks.begin(), picks.end(), [&](const Pick& a, const Pick& b) {
    if (a.m != b.m) return a.m > b.m;
    return field.values[a.cell] > field.values[b.cell];
  });
  std::vector<Pick> chosen;
  for (const auto& p : picks) {
    bool disjoint = true;
    for (const auto& q : chosen) {
      const std::size_t gap = p.cell > q.cell ? p.cell - q.cell : q.cell - p.cell;
      if (gap <= p.m + q.m) {
        disjoint = false;
        break;
      }
    }
    if (disjoint) chosen.push_back(p);
  }
  std::sort(chosen.begin(), chosen.end(), [](const Pick& a, const Pick& b) { return a.cell < b.cell; });
  for (const auto& p : chosen) {
    const double r = static_cast<double>(p.m) * field.spacing;
    auto big = detail::grid_ball(field, prefix, p.cell, 5 * p.m);
    out.balls.push_back({p.cell, field.center(p.cell), r, big.volume});
    out.weighted_sum += big.volume * std::pow(5.0 * r, -2.0 * s);
  }
  return out;
}

}  // namespace thinspace
