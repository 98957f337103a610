#pragma once

// Ball-size growth |B_t(base)| against t, with a least-squares line.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "thinspace/errors.hpp"
#include "thinspace/space.hpp"

namespace thinspace {

enum class GrowthClass { Linear, Superlinear, Sublinear, Inconclusive };

inline const char* growth_name(GrowthClass g) {
  switch (g) {
    case GrowthClass::Linear: return "linear";
    case GrowthClass::Superlinear: return "superlinear";
    case GrowthClass::Sublinear: return "sublinear";
    case GrowthClass::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

struct VolumeSample {
  double t = 0.0;
  std::size_t count = 0;
};

struct VolumeGrowth {
  std::vector<VolumeSample> samples;
  double slope = 0.0;
  double intercept = 0.0;
  /// max |count - fit| / count over the grid.
  double max_relative_residual = 0.0;
  GrowthClass growth = GrowthClass::Inconclusive;
};

inline constexpr double kLinearResidual = 0.05;
inline constexpr double kNonlinearResidual = 0.25;

/// Counts |B_t(base)| (closed balls) for each t. The fit is linear when the
/// worst relative residual is below 5%; above 25% the sign of the change in
/// secant slope between the two halves of the grid decides super/sublinear.
inline VolumeGrowth volume_growth(const FiniteGeodesicSpace& space, Vertex base, std::span<const double> t_grid) {
  require(base < space.size(), ErrorCode::UnknownVertex, "base vertex out of range");
  require(!t_grid.empty(), ErrorCode::BadParameters, "empty t grid");
  for (std::size_t i = 1; i < t_grid.size(); ++i)
    require(t_grid[i] > t_grid[i - 1], ErrorCode::BadParameters, "t grid must be increasing");
  auto row = space.row(base);
  std::vector<double> d(row.values().begin(), row.values().end());
  std::sort(d.begin(), d.end());
  VolumeGrowth out;
  for (double t : t_grid) {
    auto it = std::upper_bound(d.begin(), d.end(), t + roundoff_slack(t, 0.0));
    out.samples.push_back({t, static_cast<std::size_t>(it - d.begin())});
  }
  const double n = static_cast<double>(out.samples.size());
  double st = 0, sc = 0, stt = 0, stc = 0;
  for (const auto& s : out.samples) {
    st += s.t;
    sc += static_cast<double>(s.count);
    stt += s.t * s.t;
    stc += s.t * static_cast<double>(s.count);
  }
  const double denom = n * stt - st * st;
  out.slope = denom > 0.0 ? (n * stc - st * sc) / denom : 0.0;
  out.intercept = (sc - out.slope * st) / n;
  for (const auto& s : out.samples) {
    const double c = static_cast<double>(s.count);
    const double fit = out.intercept + out.slope * s.t;
    out.max_relative_residual = std::max(out.max_relative_residual, std::abs(c - fit) / c);
  }
  if (out.samples.size() < 3) return out;
  if (out.max_relative_residual < kLinearResidual) {
    out.growth = GrowthClass::Linear;
  } else if (out.max_relative_residual > kNonlinearResidual) {
    const auto& a = out.samples.front();
    const auto& m = out.samples[out.samples.size() / 2];
    const auto& b = out.samples.back();
    const double first = (static_cast<double>(m.count) - static_cast<double>(a.count)) / (m.t - a.t);
    const double second = (static_cast<double>(b.count) - static_cast<double>(m.count)) / (b.t - m.t);
    if (second > first) out.growth = GrowthClass::Superlinear;
    else if (second < first) out.growth = GrowthClass::Sublinear;
  }
  return out;
}

}  // namespace thinspace
