// Copyright 2026 The dalab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "json.hpp"

#include "dalab/fockcore/series.hpp"
#include "dalab/multop/block_operator.hpp"

namespace dalab {

using Point = std::vector<cplx>;

inline constexpr std::uint64_t kDefaultSeed = 20260101;

struct SphereSampling {
  std::size_t n_samples = 20000;
  std::uint64_t seed = kDefaultSeed;
  /// Number of best grid points handed to the local ascent.
  int refine_starts = 8;
  bool refine = true;
};

/// Deterministic points on the unit sphere of C^d.
///  d = 1: equally spaced circle with a golden-ratio phase offset.
///  d = 2: (e^{i theta} cos t, e^{i phi} sin t) on an m^3 grid in
///         (t, theta, phi), each axis shifted by a golden-ratio fraction.
///  d >= 3: normalized complex Gaussians from a fixed-seed mt19937_64.
std::vector<Point> sphere_grid(int d, std::size_t n, std::uint64_t seed = kDefaultSeed);

/// One normalized complex Gaussian sample.
Point gaussian_sphere_point(std::mt19937_64& rng, int d);

double euclidean_norm(const Point& z);

struct SupSearch {
  double value = 0.0;
  Point argmax;
};

/// Lower estimate of ||p||_inf = sup over the sphere of |p|: the best grid
/// point, then coordinate ascent (steps along +-e_j, +-i e_j, renormalized)
/// from the best `refine_starts` points. Every evaluated point lies on the
/// sphere, so the value is a genuine lower bound up to rounding.
SupSearch sup_norm_search(const Polynomial& p, const SphereSampling& cfg = {}, Exec exec = Exec::parallel);

inline double sup_norm(const Polynomial& p, const SphereSampling& cfg = {}) { return sup_norm_search(p, cfg).value; }

struct GapReport {
  double mult_norm = 0.0;
  double sup_norm = 0.0;
  /// mult_norm / sup_norm; 1 when both vanish.
  double ratio = 1.0;
  std::size_t n_samples = 0;
  int degree = 0;  // truncation degree of the multiplier sweep
  bool converged = false;
};

GapReport norm_gap_report(const Polynomial& p, int n_max, const SphereSampling& samples = {}, double tol = 1e-9);

nlohmann::json to_json(const GapReport& g);

}  // namespace dalab
