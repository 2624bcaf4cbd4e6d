// Copyright 2026 The dalab Authors
// SPDX-License-Identifier: Apache-2.0

#include "dalab/multop/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "dalab/error.hpp"
#include "dalab/multop/norms.hpp"

namespace dalab {

namespace {

constexpr double kGolden = 0.6180339887498948482;

double frac(double x) { return x - std::floor(x); }

Point normalized(Point z) {
  const double n = euclidean_norm(z);
  for (auto& c : z) c /= n;
  return z;
}

double modulus(const Polynomial& p, const Point& z) { return std::abs(p.evaluate(z)); }

Point ascend(const Polynomial& p, Point z) {
  const int d = static_cast<int>(z.size());
  const cplx dirs[] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  double best = modulus(p, z);
  double h = 0.05;
  for (int pass = 0; pass < 20000 && h > 1e-10; ++pass) {
    bool improved = false;
    for (int j = 0; j < d; ++j)
      for (const cplx& dir : dirs) {
        Point cand = z;
        cand[static_cast<std::size_t>(j)] += h * dir;
        cand = normalized(std::move(cand));
        const double v = modulus(p, cand);
        if (v > best) {
          best = v;
          z = std::move(cand);
          improved = true;
        }
      }
    if (!improved) h *= 0.5;
  }
  return z;
}

}  // namespace

double euclidean_norm(const Point& z) {
  double s = 0.0;
  for (const auto& c : z) s += std::norm(c);
  return std::sqrt(s);
}

Point gaussian_sphere_point(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> g(0.0, 1.0);
  Point z(static_cast<std::size_t>(d));
  double n = 0.0;
  do {
    for (auto& c : z) {
      const double re = g(rng);
      const double im = g(rng);
      c = {re, im};
    }
    n = euclidean_norm(z);
  } while (n == 0.0);
  for (auto& c : z) c /= n;
  return z;
}

std::vector<Point> sphere_grid(int d, std::size_t n, std::uint64_t seed) {
  if (d < 1) throw InvalidArgument("invalid dimension " + std::to_string(d));
  if (n == 0) throw InvalidArgument("sphere grid needs at least one point");
  constexpr double pi = std::numbers::pi;
  std::vector<Point> pts;
  pts.reserve(n);
  if (d == 1) {
    for (std::size_t i = 0; i < n; ++i) {
      const double th = 2 * pi * (static_cast<double>(i) + kGolden) / static_cast<double>(n);
      pts.push_back({std::polar(1.0, th)});
    }
    return pts;
  }
  if (d == 2) {
    const auto m = static_cast<std::size_t>(std::ceil(std::cbrt(static_cast<double>(n))));
    const double g1 = frac(1 * kGolden), g2 = frac(2 * kGolden), g3 = frac(3 * kGolden);
    for (std::size_t a = 0; a < m; ++a) {
      const double t = 0.5 * pi * (static_cast<double>(a) + g1) / static_cast<double>(m);
      for (std::size_t b = 0; b < m; ++b) {
        const double th = 2 * pi * (static_cast<double>(b) + g2) / static_cast<double>(m);
        for (std::size_t c = 0; c < m; ++c) {
          const double ph = 2 * pi * (static_cast<double>(c) + g3) / static_cast<double>(m);
          pts.push_back({std::polar(std::cos(t), th), std::polar(std::sin(t), ph)});
        }
      }
    }
    return pts;
  }
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < n; ++i) pts.push_back(gaussian_sphere_point(rng, d));
  return pts;
}

SupSearch sup_norm_search(const Polynomial& p, const SphereSampling& cfg, Exec exec) {
  if (cfg.n_samples < 1) throw InvalidArgument("sup_norm needs at least one sample");
  SupSearch out;
  const auto pts = sphere_grid(p.dim(), cfg.n_samples, cfg.seed);
  out.argmax = pts.front();
  if (p.is_zero()) return out;

  std::vector<double> vals(pts.size());
  const long npts = static_cast<long>(pts.size());
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
  for (long i = 0; i < npts; ++i) vals[static_cast<std::size_t>(i)] = modulus(p, pts[static_cast<std::size_t>(i)]);

  std::vector<std::size_t> order(pts.size());
  std::iota(order.begin(), order.end(), 0);
  const std::size_t starts = std::min<std::size_t>(order.size(), static_cast<std::size_t>(std::max(cfg.refine_starts, 1)));
  std::partial_sort(order.begin(), order.begin() + static_cast<long>(starts), order.end(),
                    [&](std::size_t a, std::size_t b) { return vals[a] != vals[b] ? vals[a] > vals[b] : a < b; });
  out.value = vals[order.front()];
  out.argmax = pts[order.front()];
  if (!cfg.refine) return out;

  std::vector<Point> refined(starts);
#pragma omp parallel for schedule(dynamic) if (exec == Exec::parallel)
  for (long s = 0; s < static_cast<long>(starts); ++s)
    refined[static_cast<std::size_t>(s)] = ascend(p, pts[order[static_cast<std::size_t>(s)]]);
  for (const auto& z : refined) {
    const double v = modulus(p, z);
    if (v > out.value) {
      out.value = v;
      out.argmax = z;
    }
  }
  return out;
}

GapReport norm_gap_report(const Polynomial& p, int n_max, const SphereSampling& samples, double tol) {
  GapReport g;
  const NormEstimate est = multiplier_norm(p, n_max, tol);
  g.mult_norm = est.value;
  g.converged = est.converged;
  g.sup_norm = sup_norm(p, samples);
  g.ratio = g.sup_norm > 0.0 ? g.mult_norm / g.sup_norm : 1.0;
  g.n_samples = samples.n_samples;
  g.degree = n_max;
  return g;
}

nlohmann::json to_json(const GapReport& g) {
  return {{"mult_norm", g.mult_norm}, {"sup_norm", g.sup_norm},   {"ratio", g.ratio},
          {"n_samples", g.n_samples}, {"degree", g.degree},       {"converged", g.converged}};
}

}  // namespace dalab
