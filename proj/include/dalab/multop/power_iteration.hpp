// Copyright 2026 The dalab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <deque>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "dalab/error.hpp"
#include "dalab/fockcore/rational.hpp"

namespace dalab {

inline constexpr long kDefaultMaxIterations = 100000;

/// Power steps taken before switching to Lanczos.
inline constexpr long kPowerPhase = 400;

/// Krylov dimension per Lanczos restart cycle.
inline constexpr int kLanczosCycle = 48;

struct PowerOptions {
  /// Relative tolerance on the reported singular value.
  double tol = 1e-9;
  long max_iterations = kDefaultMaxIterations;
};

struct PowerResult {
  double sigma = 0.0;  // sqrt of the final Rayleigh quotient
  long iterations = 0;
};

namespace detail {

inline double dot_re(std::span<const cplx> a, std::span<const cplx> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
  return s;
}

// sum conj(a_i) b_i
inline cplx dot(std::span<const cplx> a, std::span<const cplx> b) {
  cplx s{0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

// Restarted Lanczos with full reorthogonalization for the top eigenvalue of
// the Hermitian PSD operator `normal`, started from the unit vector x. Each
// product counts against `budget`. Returns the top Ritz value once its
// residual is below stall * theta, or a negative value when the budget runs
// out. x is overwritten with the last Ritz vector.
template <class Normal>
double lanczos_top(std::size_t n, Normal& normal, std::vector<cplx>& x, double stall, long& budget,
                   std::deque<double>& trace) {
  const int m = static_cast<int>(std::min<std::size_t>(n, kLanczosCycle));
  std::vector<std::vector<cplx>> q;
  std::vector<cplx> w(n);
  while (budget > 0) {
    q.assign(1, x);
    std::vector<double> alpha, beta;
    for (int j = 0; j < m && budget > 0; ++j) {
      normal(std::span<const cplx>(q[static_cast<std::size_t>(j)]), std::span<cplx>(w));
      --budget;
      alpha.push_back(dot_re(q[static_cast<std::size_t>(j)], w));
      // Two passes of classical Gram-Schmidt against the whole basis.
      for (int pass = 0; pass < 2; ++pass)
        for (const auto& v : q) {
          const cplx c = dot(v, w);
          for (std::size_t i = 0; i < n; ++i) w[i] -= c * v[i];
        }
      const double b = std::sqrt(dot_re(w, w));

      const int k = static_cast<int>(alpha.size());
      Eigen::MatrixXd t = Eigen::MatrixXd::Zero(k, k);
      for (int i = 0; i < k; ++i) t(i, i) = alpha[static_cast<std::size_t>(i)];
      for (int i = 0; i + 1 < k; ++i) t(i, i + 1) = t(i + 1, i) = beta[static_cast<std::size_t>(i)];
      const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
      const double theta = es.eigenvalues()(k - 1);
      const Eigen::VectorXd s = es.eigenvectors().col(k - 1);
      trace.push_back(theta);
      if (trace.size() > 16) trace.pop_front();

      const double residual = b * std::abs(s(k - 1));
      const bool done = residual <= stall * std::max(theta, std::numeric_limits<double>::min()) || b == 0.0 ||
                        k == static_cast<int>(n);
      if (done || j + 1 == m || budget == 0) {
        std::fill(x.begin(), x.end(), cplx{0.0, 0.0});
        for (int i = 0; i < k; ++i)
          for (std::size_t r = 0; r < n; ++r) x[r] += s(i) * q[static_cast<std::size_t>(i)][r];
        const double xn = std::sqrt(dot_re(x, x));
        for (auto& v : x) v /= xn;
        if (done) return theta;
        break;
      }
      beta.push_back(b);
      for (auto& v : w) v /= b;
      q.push_back(w);
    }
  }
  return -1.0;
}

}  // namespace detail

/// Largest eigenvalue of a positive semidefinite operator A = T*T by power
/// iteration, returned as sqrt (the top singular value of T).
///
/// `normal(x, y)` must compute y = A x. The seed is the normalized all-ones
/// vector. Iteration stops once successive Rayleigh quotients agree to
/// 1e-3 * tol relatively (floored at a few ulps). After kPowerPhase steps
/// without that, restarted Lanczos takes over from the current iterate,
/// which handles tight clusters at the top of the spectrum; it stops once
/// the Ritz residual is below the same relative threshold. Every product
/// with A counts toward max_iterations; exhausting it throws
/// NumericalFailure with the last quotients.
///
/// If the seed is annihilated, the iteration restarts from the standard
/// basis vector `fallback_seed`, or reports 0 when that is also annihilated.
template <class Normal>
PowerResult power_iterate(std::size_t n, Normal&& normal, const PowerOptions& opt, std::size_t fallback_seed = 0) {
  if (!(opt.tol > 0.0)) throw InvalidArgument("power iteration tolerance must be positive");
  PowerResult res;
  if (n == 0) return res;

  const double stall = std::max(1e-3 * opt.tol, 8.0 * std::numeric_limits<double>::epsilon());
  std::vector<cplx> x(n, cplx{1.0 / std::sqrt(static_cast<double>(n)), 0.0});
  std::vector<cplx> y(n);
  std::deque<double> trace;
  double prev = -1.0;
  bool restarted = false;

  for (long it = 1; it <= opt.max_iterations; ++it) {
    normal(std::span<const cplx>(x), std::span<cplx>(y));
    const double mu = detail::dot_re(x, y);
    const double ynorm = std::sqrt(detail::dot_re(y, y));
    res.iterations = it;
    if (ynorm == 0.0) {
      if (restarted || fallback_seed >= n) return res;
      std::fill(x.begin(), x.end(), cplx{0.0, 0.0});
      x[fallback_seed] = cplx{1.0, 0.0};
      restarted = true;
      prev = -1.0;
      continue;
    }
    trace.push_back(mu);
    if (trace.size() > 16) trace.pop_front();
    if (prev >= 0.0 && std::abs(mu - prev) <= stall * std::max(mu, std::numeric_limits<double>::min())) {
      res.sigma = std::sqrt(std::max(mu, 0.0));
      return res;
    }
    prev = mu;
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / ynorm;
    if (it == kPowerPhase && it < opt.max_iterations) {
      long budget = opt.max_iterations - it;
      const double theta = detail::lanczos_top(n, normal, x, stall, budget, trace);
      res.iterations = opt.max_iterations - budget;
      if (theta >= 0.0) {
        res.sigma = std::sqrt(std::max(theta, 0.0));
        return res;
      }
      break;
    }
  }
  std::vector<double> tail(trace.begin(), trace.end());
  throw NumericalFailure("power iteration did not converge in " + std::to_string(opt.max_iterations) + " iterations",
                         std::move(tail));
}

}  // namespace dalab
