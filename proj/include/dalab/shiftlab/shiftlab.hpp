// Copyright 2026 The dalab Authors
// SPDX-License-Identifier: Apache-2.0

// Weighted-shift model of M_{h0^k}, h0 = 2 z1 z2, on H^2_2.
//
// H^2_2 splits into the reducing chains
//   E   = span{ z1^m z2^m },           basis e_m
//   F_j = span{ z1^(j+m) z2^m },       basis f_{j,m}
//   G_j = span{ z1^m z2^(j+m) },       basis g_{j,m}
// and M_{h0^k} is a weighted k-shift on each:
//   M e_m = alpha(k,m) e_{m+k},  M f_{j,m} = beta(k,m,j) f_{j,m+k}  (same on G_j).
// Squared weights are exact rationals; square roots are only taken in
// floating point.

#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"

#include "dalab/fockcore/rational.hpp"
#include "dalab/multop/block_operator.hpp"

namespace dalab {

struct Weight {
  Rational squared;
  double value = 0.0;
};

/// alpha(k,m)^2 = 4^k C(2m,m) / C(2m+2k, m+k).
Weight alpha_weight(int k, int m);

/// beta(k,m,j)^2 = 4^k (2m+j)! (m+k)! (m+j+k)! / ( m! (m+j)! (2m+j+2k)! ),
/// the ratio of the normalizations of f_{j,m} and f_{j,m+k}. beta(k,m,0) is
/// alpha(k,m).
Weight beta_weight(int k, int m, int j);

/// alpha(k,m) in floating point via prod_{i=1..k} (2m+2i)/(2m+2i-1).
double alpha_value(int k, int m);

struct WeightTable {
  int k_max = 0, m_max = 0, j_max = 0;
  /// squared[((k-1)*(m_max+1) + m)*(j_max+1) + j] = beta(k,m,j)^2
  std::vector<Rational> squared;

  const Rational& at(int k, int m, int j) const;
};

WeightTable weight_table(int k_max, int m_max, int j_max, Exec exec = Exec::parallel);

struct WeightViolation {
  int k = 0, m = 0, j = 0;
  std::string kind;  // "beta_increase_in_j", "beta_above_alpha", "beta0_ne_alpha"
};

struct MonotonicityReport {
  bool pass = true;
  std::size_t checked = 0;
  std::vector<WeightViolation> violations;
};

/// Exact check over 1<=k<=k_max, 0<=m<=m_max, 0<=j<=j_max of
/// beta(k,m,0) = alpha(k,m), beta(k,m,j) <= beta(k,m,j-1) and
/// beta(k,m,j) <= alpha(k,m). Parallel over k, violations reported in
/// (k,m,j) order.
MonotonicityReport weight_monotonicity_check(int k_max, int m_max, int j_max, Exec exec = Exec::parallel);

/// alpha(k,m) / ((m+k+1)/(m+1))^{1/4}.
double stirling_ratio(int k, int m);

struct StirlingMax {
  double value = 0.0;
  int k = 0, m = 0;
};

StirlingMax stirling_grid_max(int k_max, int m_max, Exec exec = Exec::parallel);

struct CesaroRecord {
  int n = 0;
  int truncation = 0;
  double norm = 0.0;
};

/// (1/n) sum_{k=1..n} M_{h0^k} restricted to span{e_0..e_T}, as a real
/// (T+n+1) x (T+1) matrix in the e-basis.
Eigen::MatrixXd cesaro_matrix(int n, int truncation);

/// Largest singular value of cesaro_matrix(n, T), by dense SVD. Requires T >= 4n; T < 0
/// selects the default 5n.
CesaroRecord cesaro_operator_norm(int n, int truncation = -1);

/// One record per n, truncation 5n each.
std::vector<CesaroRecord> cesaro_sweep(const std::vector<int>& ns);

/// The Cesaro mean h_n = (1/n) sum_{k=1..n} (2 z1 z2)^k.
Polynomial cesaro_polynomial(int n);

nlohmann::json to_json(const std::vector<CesaroRecord>& table);
std::string to_csv(const std::vector<CesaroRecord>& table);

}  // namespace dalab
