// Copyright 2026 The dalab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"

#include "dalab/multop/block_operator.hpp"
#include "dalab/multop/power_iteration.hpp"

namespace dalab {

/// Largest singular value of T within relative tolerance `tol`.
///
/// Weighted partial permutations (every monomial multiplier) are read off
/// exactly. Homogeneous operators have block-diagonal T*T, so each domain
/// degree is iterated on its own, in parallel, and the maximum is taken.
/// Anything else runs power iteration on the whole T*T, assembled once as a
/// row-major sparse matrix with row-parallel products.
double op_norm(const BlockOperator& t, double tol = 1e-9, Exec exec = Exec::parallel,
               long max_iterations = kDefaultMaxIterations);

/// Serial reference: plain power iteration on the whole of T*T through the
/// per-block products, no structural shortcuts. Kept for cross-checking
/// op_norm.
double op_norm_reference(const BlockOperator& t, double tol = 1e-9, long max_iterations = kDefaultMaxIterations);

/// Per-domain-degree norms of a homogeneous operator; entry k is the norm of
/// the block leaving degree k (0 for empty blocks).
std::vector<double> block_norms(const BlockOperator& t, double tol = 1e-9, Exec exec = Exec::parallel,
                                long max_iterations = kDefaultMaxIterations);

/// Dense SVD oracle. Only sensible for small truncations.
double dense_op_norm(const Eigen::MatrixXcd& m);
inline double dense_op_norm(const BlockOperator& t) { return dense_op_norm(t.to_dense()); }

/// Power iteration on an explicit dense matrix.
double dense_power_norm(const Eigen::MatrixXcd& m, double tol = 1e-9, long max_iterations = kDefaultMaxIterations);

struct NormEstimate {
  double value = 0.0;
  std::vector<std::pair<int, double>> sweep;  // (N, ||M_p restricted to degree <= N||)
  bool converged = false;
  double tolerance = 0.0;
};

/// Truncation sweep N = 0..n_max of op_norm(mult_matrix(p, N)). The
/// restricted norms increase to ||M_p||; `converged` means the last two
/// entries differ by less than tol * value (a plateau heuristic, not a
/// proof). Requires n_max >= deg p.
NormEstimate multiplier_norm(const Polynomial& p, int n_max, double tol = 1e-9, Exec exec = Exec::parallel);

nlohmann::json to_json(const NormEstimate& e);

}  // namespace dalab
