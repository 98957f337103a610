#pragma once

// Closed-form Riemannian families, Ricci eigenvalues and ball averages of
// curvature integrands around a symmetry point.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "thinspace/errors.hpp"
#include "thinspace/parallel.hpp"

namespace thinspace {

enum class ManifoldFamily { Sphere, Paraboloid, ProductSphereFlat, Flat, CappedCylinder };

inline const char* family_name(ManifoldFamily f) {
  switch (f) {
    case ManifoldFamily::Sphere: return "sphere";
    case ManifoldFamily::Paraboloid: return "paraboloid";
    case ManifoldFamily::ProductSphereFlat: return "product_sphere_flat";
    case ManifoldFamily::Flat: return "flat";
    case ManifoldFamily::CappedCylinder: return "capped_cylinder";
  }
  return "unknown";
}

/// Chart conventions for points:
///   sphere(n, rho)              ambient coordinates in R^{n+1}, |p| = rho
///   paraboloid                  (x, y) on z = x^2 + y^2
///   product_sphere_flat(rho, d) (p in R^3 with |p| = rho, q in R^d)
///   flat(n)                     R^n
///   capped_cylinder(rho, h)     (s, phi), s in [0, pi rho + h] the meridian
///                               arclength from the bottom pole
struct AnalyticManifold {
  ManifoldFamily family = ManifoldFamily::Flat;
  int n = 2;
  double rho = 1.0;
  int d = 0;
  double h = 0.0;

  static AnalyticManifold sphere(int n, double rho) {
    require(n >= 2 && rho > 0.0, ErrorCode::BadParameters, "sphere needs n >= 2 and rho > 0");
    return {ManifoldFamily::Sphere, n, rho, 0, 0.0};
  }
  static AnalyticManifold paraboloid() { return {ManifoldFamily::Paraboloid, 2, 1.0, 0, 0.0}; }
  static AnalyticManifold product_sphere_flat(double rho, int d) {
    require(rho > 0.0 && d >= 0, ErrorCode::BadParameters, "product needs rho > 0 and d >= 0");
    return {ManifoldFamily::ProductSphereFlat, 2 + d, rho, d, 0.0};
  }
  static AnalyticManifold flat(int n) {
    require(n >= 1, ErrorCode::BadParameters, "flat needs n >= 1");
    return {ManifoldFamily::Flat, n, 1.0, 0, 0.0};
  }
  static AnalyticManifold capped_cylinder(double rho, double h) {
    require(rho > 0.0 && h >= 0.0, ErrorCode::BadParameters, "capped cylinder needs rho > 0 and h >= 0");
    return {ManifoldFamily::CappedCylinder, 2, rho, 0, h};
  }

  int dimension() const { return n; }
  /// Every point is a symmetry point.
  bool homogeneous() const {
    return family == ManifoldFamily::Sphere || family == ManifoldFamily::Flat ||
           family == ManifoldFamily::ProductSphereFlat;
  }
};

using ChartPoint = std::vector<double>;

/// Gaussian curvature of z = rho^2 at chart radius rho.
inline double paraboloid_curvature(double rho) {
  const double q = 1.0 + 4.0 * rho * rho;
  return 4.0 / (q * q);
}

/// Geodesic distance from the apex to the circle of chart radius rho.
inline double paraboloid_radius(double rho) {
  return rho * std::sqrt(1.0 + 4.0 * rho * rho) / 2.0 + std::asinh(2.0 * rho) / 4.0;
}

/// Inverse of paraboloid_radius.
inline double paraboloid_chart_radius(double r) {
  if (r <= 0.0) return 0.0;
  double lo = 0.0, hi = std::max(1.0, std::sqrt(r) + 1.0);
  while (paraboloid_radius(hi) < r) hi *= 2.0;
  double x = std::min(std::sqrt(r), r);
  for (int it = 0; it < 200; ++it) {
    const double f = paraboloid_radius(x) - r;
    if (f > 0.0) hi = x; else lo = x;
    const double step = f / std::sqrt(1.0 + 4.0 * x * x);
    double next = x - step;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 1e-15 * std::max(1.0, x)) return next;
    x = next;
  }
  return x;
}

namespace detail {

inline double norm(const double* p, std::size_t count) {
  double s = 0.0;
  for (std::size_t i = 0; i < count; ++i) s += p[i] * p[i];
  return std::sqrt(s);
}

inline void check_chart(const AnalyticManifold& m, const ChartPoint& p) {
  for (double v : p) require(std::isfinite(v), ErrorCode::OutOfChart, "non-finite coordinate");
  auto on_sphere = [&](std::size_t count) {
    const double r = norm(p.data(), count);
    require(std::abs(r - m.rho) <= 1e-9 * m.rho, ErrorCode::OutOfChart,
            "point is not on the sphere of radius " + std::to_string(m.rho));
  };
  switch (m.family) {
    case ManifoldFamily::Sphere:
      require(p.size() == static_cast<std::size_t>(m.n) + 1, ErrorCode::OutOfChart, "sphere points have n+1 coordinates");
      on_sphere(p.size());
      break;
    case ManifoldFamily::Paraboloid:
      require(p.size() == 2, ErrorCode::OutOfChart, "paraboloid points are (x, y)");
      break;
    case ManifoldFamily::ProductSphereFlat:
      require(p.size() == 3 + static_cast<std::size_t>(m.d), ErrorCode::OutOfChart,
              "product points have 3 + d coordinates");
      on_sphere(3);
      break;
    case ManifoldFamily::Flat:
      require(p.size() == static_cast<std::size_t>(m.n), ErrorCode::OutOfChart, "flat points have n coordinates");
      break;
    case ManifoldFamily::CappedCylinder:
      require(p.size() == 2, ErrorCode::OutOfChart, "capped cylinder points are (s, phi)");
      require(p[0] >= 0.0 && p[0] <= std::numbers::pi * m.rho + m.h, ErrorCode::OutOfChart,
              "meridian arclength outside [0, pi rho + h]");
      break;
  }
}

}  // namespace detail

inline std::vector<double> ricci_eigenvalues(const AnalyticManifold& m, const ChartPoint& p) {
  detail::check_chart(m, p);
  const auto n = static_cast<std::size_t>(m.n);
  switch (m.family) {
    case ManifoldFamily::Sphere:
      return std::vector<double>(n, (m.n - 1) / (m.rho * m.rho));
    case ManifoldFamily::Paraboloid: {
      const double k = paraboloid_curvature(std::hypot(p[0], p[1]));
      return {k, k};
    }
    case ManifoldFamily::ProductSphereFlat: {
      std::vector<double> out(n, 0.0);
      out[n - 1] = out[n - 2] = 1.0 / (m.rho * m.rho);
      return out;
    }
    case ManifoldFamily::Flat:
      return std::vector<double>(n, 0.0);
    case ManifoldFamily::CappedCylinder: {
      // The weld circles belong to the cylinder.
      const double cap = std::numbers::pi * m.rho / 2.0;
      const bool on_cap = p[0] < cap || p[0] > cap + m.h;
      const double k = on_cap ? 1.0 / (m.rho * m.rho) : 0.0;
      return {k, k};
    }
  }
  return {};
}

inline double r_k(const AnalyticManifold& m, const ChartPoint& p, int k) {
  require(k >= 1 && k <= m.n, ErrorCode::BadK, "k must lie in [1, n]");
  auto eig = ricci_eigenvalues(m, p);
  double s = 0.0;
  for (int i = 0; i < k; ++i) s += eig[static_cast<std::size_t>(i)];
  return s;
}

/// 0 v (g R_k) ^ L, or |R_k|^s.
struct Integrand {
  enum class Form { Clamp, Power };
  Form form = Form::Clamp;
  int k = 1;
  double g = 1.0;
  double L = std::numeric_limits<double>::infinity();
  double s = 1.0;

  static Integrand clamp(int k, double g, double L) { return {Form::Clamp, k, g, L, 1.0}; }
  static Integrand power(int k, double s) { return {Form::Power, k, 1.0, 0.0, s}; }

  double operator()(double rk) const {
    if (form == Form::Power) return std::pow(std::abs(rk), s);
    return std::max(0.0, std::min(g * rk, L));
  }
};

enum class IntegralMethod { Quadrature, MonteCarlo };

inline const char* method_name(IntegralMethod m) {
  return m == IntegralMethod::Quadrature ? "quadrature" : "monte_carlo";
}

struct IntegralEstimate {
  double value = 0.0;
  /// Quadrature: accumulated Richardson error. Monte-Carlo: 3 sigma.
  double abs_error_bound = 0.0;
  IntegralMethod method = IntegralMethod::Quadrature;
  std::size_t samples = 0;
};

struct IntegralOptions {
  double abs_tol = 1e-8;
  int max_depth = 40;
  std::size_t samples = std::size_t{1} << 16;
  std::size_t strata = 64;
  std::uint64_t seed = 0;
};

struct SimpsonResult {
  double value = 0.0;
  double error = 0.0;
  std::size_t evaluations = 0;
};

/// Adaptive Simpson on [a, b].
template <typename F>
SimpsonResult adaptive_simpson(F&& f, double a, double b, double abs_tol, int max_depth) {
  SimpsonResult out;
  if (!(b > a)) return out;
  struct Rec {
    F& f;
    SimpsonResult& out;
    double step(double a, double fa, double m, double fm, double b, double fb, double whole, double tol, int depth) {
      const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
      const double flm = f(lm), frm = f(rm);
      out.evaluations += 2;
      const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
      const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
      const double diff = left + right - whole;
      if (depth <= 0 || std::abs(diff) <= 15.0 * tol) {
        out.error += std::abs(diff) / 15.0;
        return left + right + diff / 15.0;
      }
      return step(a, fa, lm, flm, m, fm, left, tol / 2.0, depth - 1) +
             step(m, fm, rm, frm, b, fb, right, tol / 2.0, depth - 1);
    }
  } rec{f, out};
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  out.evaluations = 3;
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  out.value = rec.step(a, fa, m, fm, b, fb, whole, abs_tol, max_depth);
  return out;
}

namespace detail {

/// Radial description of balls around a symmetry point: integration variable
/// on [0, upper], a volume weight proportional to the area of the level set,
/// the R_k field, and interior breakpoints where the field jumps.
struct RadialModel {
  double upper = 0.0;
  std::vector<double> breaks;
  std::function<double(double)> weight;
  std::function<std::vector<double>(double)> eigen;
};

inline bool is_symmetry_point(const AnalyticManifold& m, const ChartPoint& base) {
  if (m.homogeneous()) return true;
  if (m.family == ManifoldFamily::Paraboloid) return base[0] == 0.0 && base[1] == 0.0;
  const double top = std::numbers::pi * m.rho + m.h;
  return base[0] == 0.0 || base[0] == top;
}

inline RadialModel radial_model(const AnalyticManifold& m, double r) {
  RadialModel model;
  const double rho = m.rho;
  switch (m.family) {
    case ManifoldFamily::Flat:
      model.upper = r;
      model.weight = [n = m.n](double t) { return std::pow(t, n - 1); };
      model.eigen = [n = m.n](double) { return std::vector<double>(static_cast<std::size_t>(n), 0.0); };
      break;
    case ManifoldFamily::Sphere:
      model.upper = std::min(r, std::numbers::pi * rho);
      model.weight = [n = m.n, rho](double t) { return std::pow(std::sin(t / rho), n - 1); };
      model.eigen = [n = m.n, rho](double) {
        return std::vector<double>(static_cast<std::size_t>(n), (n - 1) / (rho * rho));
      };
      break;
    case ManifoldFamily::Paraboloid:
      model.upper = paraboloid_chart_radius(r);
      model.weight = [](double x) { return x * std::sqrt(1.0 + 4.0 * x * x); };
      model.eigen = [](double x) {
        const double k = paraboloid_curvature(x);
        return std::vector<double>{k, k};
      };
      break;
    case ManifoldFamily::CappedCylinder: {
      const double cap = std::numbers::pi * rho / 2.0, h = m.h;
      model.upper = std::min(r, std::numbers::pi * rho + h);
      for (double b : {cap, cap + h})
        if (b > 0.0 && b < model.upper) model.breaks.push_back(b);
      model.weight = [cap, h, rho](double t) {
        if (t <= cap) return std::sin(t / rho);
        if (t <= cap + h) return 1.0;
        return std::sin((t - h) / rho);
      };
      model.eigen = [m](double t) { return ricci_eigenvalues(m, {t, 0.0}); };
      break;
    }
    case ManifoldFamily::ProductSphereFlat:
      break;
  }
  return model;
}

inline double integrand_at(const Integrand& f, const std::vector<double>& eig) {
  double s = 0.0;
  for (int i = 0; i < f.k; ++i) s += eig[static_cast<std::size_t>(i)];
  return f(s);
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Independent generator for stream `index` of a seeded family.
inline std::mt19937_64 stream(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(splitmix64(seed ^ splitmix64(index + 1)));
}

}  // namespace detail

/// Average of `integrand` over the geodesic ball B_r(base). Balls must be
/// centred at a symmetry point (any point of a homogeneous family, the apex
/// of the paraboloid, a pole of the capped cylinder).
inline IntegralEstimate ball_integral(const AnalyticManifold& m, const ChartPoint& base, double r,
                                      const Integrand& integrand, IntegralMethod method,
                                      const IntegralOptions& opts = {}) {
  require(r > 0.0 && std::isfinite(r), ErrorCode::BadParameters, "ball radius must be positive");
  require(integrand.k >= 1 && integrand.k <= m.n, ErrorCode::BadK, "k must lie in [1, n]");
  detail::check_chart(m, base);
  require(detail::is_symmetry_point(m, base), ErrorCode::UnsupportedBase,
          std::string("balls on ") + family_name(m.family) + " are supported only around a symmetry point");
  IntegralEstimate est;
  est.method = method;
  if (m.family == ManifoldFamily::ProductSphereFlat) {
    // Curvature is constant, so is the integrand.
    est.value = detail::integrand_at(integrand, ricci_eigenvalues(m, base));
    est.samples = 1;
    return est;
  }
  auto model = detail::radial_model(m, r);
  auto h = [&](double t) { return detail::integrand_at(integrand, model.eigen(t)); };
  std::vector<double> cuts{0.0};
  cuts.insert(cuts.end(), model.breaks.begin(), model.breaks.end());
  cuts.push_back(model.upper);

  if (method == IntegralMethod::Quadrature) {
    double num = 0.0, num_err = 0.0, vol = 0.0, vol_err = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      auto a = adaptive_simpson([&](double t) { return h(t) * model.weight(t); }, cuts[i], cuts[i + 1],
                                opts.abs_tol, opts.max_depth);
      auto b = adaptive_simpson(model.weight, cuts[i], cuts[i + 1], opts.abs_tol, opts.max_depth);
      num += a.value;
      num_err += a.error;
      vol += b.value;
      vol_err += b.error;
      est.samples += a.evaluations + b.evaluations;
    }
    est.value = num / vol;
    est.abs_error_bound = (num_err + std::abs(est.value) * vol_err) / vol;
    return est;
  }

  const std::size_t strata = std::max<std::size_t>(1, opts.strata);
  const std::size_t per = std::max<std::size_t>(2, opts.samples / strata);
  struct Stratum {
    double num = 0.0, vol = 0.0;
    double sum_h = 0.0, sum_w = 0.0, sum_hh = 0.0, sum_ww = 0.0, sum_hw = 0.0;
  };
  std::vector<Stratum> parts(strata);
  const double width = model.upper / static_cast<double>(strata);
  parallel_for(strata, [&](std::size_t s, unsigned) {
    auto gen = detail::stream(opts.seed, s);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Stratum& st = parts[s];
    for (std::size_t i = 0; i < per; ++i) {
      const double t = width * (static_cast<double>(s) + unit(gen));
      const double w = model.weight(t);
      const double hw = h(t) * w;
      st.sum_h += hw;
      st.sum_w += w;
      st.sum_hh += hw * hw;
      st.sum_ww += w * w;
      st.sum_hw += hw * w;
    }
    st.num = width * st.sum_h / static_cast<double>(per);
    st.vol = width * st.sum_w / static_cast<double>(per);
  });
  double num = 0.0, vol = 0.0;
  for (const auto& st : parts) {
    num += st.num;
    vol += st.vol;
  }
  est.value = num / vol;
  // Linearized variance of the ratio estimator, summed over strata.
  double var = 0.0;
  const double q = static_cast<double>(per);
  for (const auto& st : parts) {
    const double mh = st.sum_h / q, mw = st.sum_w / q;
    const double vh = st.sum_hh / q - mh * mh, vw = st.sum_ww / q - mw * mw, chw = st.sum_hw / q - mh * mw;
    const double v = vh - 2.0 * est.value * chw + est.value * est.value * vw;
    var += width * width * std::max(0.0, v) / (q - 1.0);
  }
  est.abs_error_bound = 3.0 * std::sqrt(var) / vol;
  est.samples = strata * per;
  return est;
}

/// Volume of B_r(base) up to the family's fixed normalization; exact
/// coordinate annuli around a symmetry point.
inline double ball_volume(const AnalyticManifold& m, const ChartPoint& base, double r,
                          const IntegralOptions& opts = {}) {
  detail::check_chart(m, base);
  require(detail::is_symmetry_point(m, base) && m.family != ManifoldFamily::ProductSphereFlat,
          ErrorCode::UnsupportedBase, "ball volume needs a radial model");
  if (r <= 0.0) return 0.0;
  auto model = detail::radial_model(m, r);
  std::vector<double> cuts{0.0};
  cuts.insert(cuts.end(), model.breaks.begin(), model.breaks.end());
  cuts.push_back(model.upper);
  double vol = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    vol += adaptive_simpson(model.weight, cuts[i], cuts[i + 1], opts.abs_tol, opts.max_depth).value;
  return vol;
}

enum class ScanTrend { ApproachingL, ApproachingZero, Inconclusive };

inline const char* trend_name(ScanTrend t) {
  switch (t) {
    case ScanTrend::ApproachingL: return "approaching L";
    case ScanTrend::ApproachingZero: return "approaching 0";
    case ScanTrend::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

struct ScanEntry {
  double r = 0.0;
  double F = 0.0;
  double err = 0.0;
};

struct ScanResult {
  std::vector<ScanEntry> entries;
  ScanTrend trend = ScanTrend::Inconclusive;
};

/// Trend of the last third of the grid (at least two points): a
/// non-decreasing tail ending within 1e-3 L of L, or a non-increasing tail
/// that at least halves (or sits at 0).
inline ScanTrend classify_trend(const std::vector<ScanEntry>& entries, double L) {
  const std::size_t n = entries.size();
  if (n < 2) return ScanTrend::Inconclusive;
  const std::size_t tail = std::max<std::size_t>(2, (n + 2) / 3);
  const std::size_t first = n - tail;
  bool up = true, down = true;
  for (std::size_t i = first + 1; i < n; ++i) {
    const double slack = entries[i].err + entries[i - 1].err;
    if (entries[i].F < entries[i - 1].F - slack) up = false;
    if (entries[i].F > entries[i - 1].F + slack) down = false;
  }
  const double last = entries.back().F, start = entries[first].F;
  if (up && std::isfinite(L) && std::abs(last - L) <= 1e-3 * L) return ScanTrend::ApproachingL;
  if (down && (last <= 1e-12 || last <= 0.5 * start)) return ScanTrend::ApproachingZero;
  return ScanTrend::Inconclusive;
}

/// F(r) = average over B_r(base) of 0 v (r^{2-alpha} R_k) ^ L for each r.
inline ScanResult tangent_hypothesis_scan(const AnalyticManifold& m, const ChartPoint& base, int k, double alpha,
                                          double L, const std::vector<double>& r_grid,
                                          IntegralMethod method = IntegralMethod::Quadrature,
                                          const IntegralOptions& opts = {}) {
  require(alpha > 0.0 && alpha < 2.0, ErrorCode::BadParameters, "alpha must lie in (0, 2)");
  require(L > 0.0, ErrorCode::BadParameters, "L must be positive");
  require(!r_grid.empty(), ErrorCode::BadParameters, "empty radius grid");
  for (std::size_t i = 1; i < r_grid.size(); ++i)
    require(r_grid[i] > r_grid[i - 1], ErrorCode::BadParameters, "radius grid must be increasing");
  ScanResult out;
  for (std::size_t i = 0; i < r_grid.size(); ++i) {
    const double r = r_grid[i];
    IntegralOptions o = opts;
    o.seed = detail::splitmix64(opts.seed + i);
    auto est = ball_integral(m, base, r, Integrand::clamp(k, std::pow(r, 2.0 - alpha), L), method, o);
    out.entries.push_back({r, est.value, est.abs_error_bound});
  }
  out.trend = classify_trend(out.entries, L);
  return out;
}

}  // namespace thinspace
