#pragma once

// The eigen-weight inequality
//   0 v sum_i sum_j lambda_j a_{j,i}^2 >= sqrt(eps') (lambda_1 + ... + lambda_k)
// for near-orthonormal A, with a randomized falsification search.

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "thinspace/errors.hpp"
#include "thinspace/manifold.hpp"
#include "thinspace/parallel.hpp"

namespace thinspace {

struct EigenSample {
  Eigen::MatrixXd A;  // n x k
  std::vector<double> lambda;
  double eps_prime = 1e-4;
  double c1 = 1e-4;
  double c = 4.0;
  double eps = 1.0;
};

struct L14Verdict {
  bool holds = false;
  double lhs = 0.0;
  double rhs = 0.0;
  long double lhs_extended = 0.0L;
  long double rhs_extended = 0.0L;
  bool hypotheses_met = true;
  /// Empty when the hypotheses hold, otherwise the first one that failed.
  std::string unmet;
};

/// |A^T A - I_k| and |A|^2 use the Frobenius norm.
inline std::string l14_unmet_hypothesis(const EigenSample& s) {
  const auto n = s.A.rows(), k = s.A.cols();
  if (k < 1 || k > n) return "k must lie in [1, n]";
  if (static_cast<Eigen::Index>(s.lambda.size()) != n) return "lambda must have n entries";
  if (!(s.eps_prime > 0.0 && s.c1 > 0.0 && s.c > 0.0 && s.eps > 0.0)) return "constants must be positive";
  if (!std::is_sorted(s.lambda.begin(), s.lambda.end())) return "lambda must be sorted ascending";
  if (s.lambda.front() < -s.eps_prime) return "lambda_1 < -eps'";
  if (s.lambda[static_cast<std::size_t>(k - 1)] < s.eps / (2.0 * static_cast<double>(k))) return "lambda_k < eps/2k";
  const Eigen::MatrixXd gram = s.A.transpose() * s.A - Eigen::MatrixXd::Identity(k, k);
  if (gram.norm() > s.c1) return "|A^T A - I| > c1";
  if (s.A.squaredNorm() > s.c) return "|A|^2 > c";
  return {};
}

/// Both sides in double and in long double. Samples outside the hypotheses
/// still get the raw comparison, tagged through `unmet`.
inline L14Verdict l14_verify(const EigenSample& s) {
  require(s.A.rows() == static_cast<Eigen::Index>(s.lambda.size()) && s.A.cols() >= 1, ErrorCode::BadParameters,
          "A must be n x k with n = |lambda|");
  L14Verdict v;
  v.unmet = l14_unmet_hypothesis(s);
  v.hypotheses_met = v.unmet.empty();
  const auto n = s.A.rows(), k = s.A.cols();
  double lhs = 0.0, sum = 0.0;
  long double lhs_x = 0.0L, sum_x = 0.0L;
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double a = s.A(j, i);
      const double lam = s.lambda[static_cast<std::size_t>(j)];
      lhs += lam * a * a;
      lhs_x += static_cast<long double>(lam) * a * a;
    }
  }
  for (Eigen::Index i = 0; i < std::min(k, n); ++i) {
    sum += s.lambda[static_cast<std::size_t>(i)];
    sum_x += s.lambda[static_cast<std::size_t>(i)];
  }
  v.lhs = std::max(0.0, lhs);
  v.rhs = std::sqrt(s.eps_prime) * sum;
  v.lhs_extended = std::max(0.0L, lhs_x);
  v.rhs_extended = std::sqrt(static_cast<long double>(s.eps_prime)) * sum_x;
  v.holds = v.lhs >= v.rhs;
  return v;
}

struct L14SearchOptions {
  double c1 = 1e-4;
  double eps_prime = 1e-4;
};

struct L14SearchResult {
  std::size_t trials = 0;
  std::size_t violations = 0;
  /// Lowest-index violating trial.
  std::optional<std::size_t> first_trial;
  std::optional<EigenSample> counterexample;
};

namespace detail {

/// Trial `index` of a seeded search; deterministic in (seed, index).
/// Half the trials use a random orthonormal frame and spread eigenvalues; the
/// other half tilt the frame slightly off the lowest k eigenvectors and push
/// lambda_1 + ... + lambda_k towards zero, where the inequality is tightest.
inline EigenSample l14_trial(int n, int k, double eps, double c, const L14SearchOptions& o, std::uint64_t seed,
                             std::size_t index) {
  auto gen = stream(seed, index);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  EigenSample s;
  s.eps_prime = o.eps_prime;
  s.c1 = o.c1;
  s.c = c;
  s.eps = eps;
  const auto nn = static_cast<std::size_t>(n), kk = static_cast<std::size_t>(k);
  const double floor_k = eps / (2.0 * k);
  const bool tight = (index & 1U) != 0;
  std::vector<double> lam(nn);

  Eigen::MatrixXd Q;
  if (!tight) {
    Eigen::MatrixXd G(n, k);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < k; ++j) G(i, j) = normal(gen);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(G);
    Q = qr.householderQ() * Eigen::MatrixXd::Identity(n, k);
    for (auto& x : lam) x = -o.eps_prime + (4.0 + o.eps_prime) * unit(gen);
    std::sort(lam.begin(), lam.end());
    for (std::size_t j = kk - 1; j < nn; ++j) lam[j] = std::max(lam[j], floor_k);
  } else {
    const double theta = std::pow(10.0, -8.0 * unit(gen));
    Eigen::MatrixXd S = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        S(i, j) = theta * normal(gen);
        S(j, i) = -S(i, j);
      }
    // Cayley transform: an exact rotation close to the identity.
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
    Eigen::MatrixXd rot = (I - S).partialPivLu().solve(I + S);
    Q = rot.leftCols(k);
    lam[0] = -o.eps_prime * (1.0 - std::pow(unit(gen), 4));
    double partial = lam[0];
    for (std::size_t j = 1; j + 1 < kk; ++j) {
      lam[j] = lam[j - 1] + (floor_k - lam[j - 1]) * unit(gen);
      partial += lam[j];
    }
    if (kk >= 2) {
      const double target = o.eps_prime * std::pow(10.0, -6.0 * unit(gen));
      lam[kk - 1] = std::max({target - partial, floor_k, lam[kk - 2]});
    } else {
      lam[0] = floor_k * (1.0 + unit(gen));
    }
    for (std::size_t j = kk; j < nn; ++j) lam[j] = lam[kk - 1] + 4.0 * unit(gen);
    std::sort(lam.begin(), lam.end());
  }

  Eigen::MatrixXd E(n, k);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < k; ++j) E(i, j) = normal(gen);
  double scale = o.c1 * unit(gen) / (2.0 * std::max(E.norm(), 1e-300));
  for (int attempt = 0; attempt < 60; ++attempt) {
    s.A = Q + scale * E;
    const Eigen::MatrixXd gram = s.A.transpose() * s.A - Eigen::MatrixXd::Identity(k, k);
    if (gram.norm() <= o.c1 && s.A.squaredNorm() <= c) break;
    scale /= 2.0;
  }
  s.lambda = std::move(lam);
  return s;
}

}  // namespace detail

/// Randomized search for a hypothesis-satisfying sample that breaks the
/// inequality. Samples that miss the hypotheses never count as violations.
inline L14SearchResult l14_search(int n, int k, double eps, double c, std::size_t trials, std::uint64_t seed,
                                  const L14SearchOptions& opts = {}) {
  require(trials >= 1, ErrorCode::BadParameters, "trials must be >= 1");
  require(k >= 1 && k <= n, ErrorCode::BadK, "k must lie in [1, n]");
  require(eps > 0.0 && c > 0.0 && opts.c1 > 0.0 && opts.eps_prime > 0.0, ErrorCode::BadParameters,
          "constants must be positive");
  constexpr std::size_t kChunk = 4096;
  const std::size_t chunks = (trials + kChunk - 1) / kChunk;
  std::vector<std::size_t> counts(chunks, 0);
  std::vector<std::optional<std::size_t>> firsts(chunks);
  parallel_for(chunks, [&](std::size_t ch, unsigned) {
    const std::size_t end = std::min(trials, (ch + 1) * kChunk);
    for (std::size_t t = ch * kChunk; t < end; ++t) {
      auto s = detail::l14_trial(n, k, eps, c, opts, seed, t);
      auto v = l14_verify(s);
      if (v.hypotheses_met && !v.holds) {
        ++counts[ch];
        if (!firsts[ch]) firsts[ch] = t;
      }
    }
  });
  L14SearchResult out;
  out.trials = trials;
  for (std::size_t ch = 0; ch < chunks; ++ch) {
    out.violations += counts[ch];
    if (!out.first_trial && firsts[ch]) out.first_trial = firsts[ch];
  }
  if (out.first_trial) out.counterexample = detail::l14_trial(n, k, eps, c, opts, seed, *out.first_trial);
  return out;
}

}  // namespace thinspace
