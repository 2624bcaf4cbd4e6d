// Copyright 2026 The dalab Authors
// SPDX-License-Identifier: Apache-2.0

// Peaking multipliers on the sphere: the point peak g = sum 2^-n f^n with
// f = (1 + <z, zeta0>)/2, the circle functions h_n, and convex-hull
// upper bounds for inf ||g h|| over h built from powers of a peak base.

#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"

#include "dalab/fockcore/series.hpp"
#include "dalab/multop/norms.hpp"
#include "dalab/multop/sphere.hpp"

namespace dalab {

/// p(U* z). U must be unitary to 1e-10; degrees and homogeneous components
/// are preserved.
Polynomial rotation_pullback(const Eigen::MatrixXcd& u, const Polynomial& p);

/// Unitary with U e_1 = zeta0 (|zeta0| = 1). A phase-corrected Householder
/// reflection; the phase of zeta0_1 is taken as 0 when zeta0_1 = 0, so
/// zeta0 = -e_1 gives diag(-1, 1, ..., 1).
Eigen::MatrixXcd unitary_to(const Point& zeta0);

struct PointTarget {
  Point zeta;
};

/// T = {(z, conj z) : |z| = 1/sqrt 2} in C^2.
struct BalancedCircle {};

inline constexpr int kDefaultPeakTerms = 30;  // ceil(log2(1e9))

struct PeakSpec {
  std::variant<PointTarget, BalancedCircle> target;
  int terms = kDefaultPeakTerms;  // series truncation M

  static PeakSpec point(Point zeta, int terms = kDefaultPeakTerms);
  static PeakSpec circle();

  int dim() const;
  double tail_bound() const;
  void validate() const;
};

/// Distance from z to the target set: Euclidean in C^d for a point,
/// sqrt(2 - sqrt2 |z1 + conj z2|) for the balanced circle.
double target_distance(const PeakSpec& spec, const Point& z);

/// sum_{n=1..M} 2^-n f^n with f = (1 + z1)/2, exact coefficients.
ExactSeries axis_peak_polynomial(int d, int terms);

/// The axis peak pulled back along unitary_to(zeta0). Requires a point
/// target.
Polynomial peak_polynomial(const PeakSpec& spec);

/// sum_{n=1..M} 2^-n f^n with f(z) = (1 + <z, zeta0>)/2, in exact arithmetic.
/// This is what peak_polynomial computes for the same target, since only
/// the first column of the unitary enters f. Requires |zeta0| = 1 exactly.
ExactSeries exact_peak_polynomial(std::span<const QComplex> zeta0, int terms);

/// h_n = (1/n) sum_{k=1..n} (2 z1 z2)^k.
Polynomial circle_peak(int n);

struct PeakGrid {
  std::size_t n_points = 10000;
  std::uint64_t seed = kDefaultSeed;
  double exclusion_radius = 0.05;
  bool attach_norm = true;
  /// Sweep bound for the attached multiplier norm; -1 selects deg p.
  int norm_n_max = -1;
  double tol = 1e-9;
};

struct PeakReport {
  cplx value_on_target;
  double max_off_target = 0.0;
  double margin = 0.0;  // 1 - max_off_target
  Point argmax;
  std::optional<NormEstimate> mult_norm;
  std::size_t grid_size = 0;  // points kept after exclusion
  double exclusion_radius = 0.0;
};

/// Maximum of |p| over the sphere grid minus everything within
/// exclusion_radius of the target. Throws InvalidArgument when the exclusion
/// empties the grid.
PeakReport peak_verify(const Polynomial& p, const PeakSpec& spec, const PeakGrid& grid = {});

/// Grid dump: coordinates, |p| and whether the point was excluded.
std::string peak_grid_csv(const Polynomial& p, const PeakSpec& spec, const PeakGrid& grid = {});

struct SupKRow {
  int n = 0;
  double cesaro = 0.0;  // || g (1/n) sum_{k<=n} f^k ||
  double power = 0.0;   // || g f^n ||
  double best = 0.0;    // smallest upper bound found for any n' <= n
  bool converged = false;
};

struct SupKTable {
  double target = 0.0;  // ||g||_K = |g(zeta)|
  std::vector<SupKRow> rows;
};

struct SupKOptions {
  /// Truncation used for each multiplier norm is deg(g h) + slack.
  int slack = 16;
  double tol = 1e-9;
};

/// Candidates for inf{ ||g h|| : h in the convex hull of {f^k} }, which
/// equals ||g||_K when f peaks exactly on K. Each exact candidate norm is an
/// upper bound for the infimum; the reported values are truncated norms and
/// so sit slightly below the exact ones. Rows at n = 1, 2, 4, ... up to n_max
/// (n_max itself is always included).
SupKTable supnorm_on_K_powers(const Polynomial& g, const Polynomial& f, const Point& k_point, int n_max,
                              const SupKOptions& opt = {});

nlohmann::json to_json(const PeakReport& r);
nlohmann::json to_json(const SupKTable& t);
std::string to_csv(const SupKTable& t);

}  // namespace dalab
