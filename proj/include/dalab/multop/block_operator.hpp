// Copyright 2026 The dalab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "dalab/fockcore/series.hpp"

namespace dalab {

enum class Exec { serial, parallel };

/// One graded block: maps the degree-`from_degree` orthonormal monomials to
/// the degree-(from_degree + shift) ones.
struct OperatorBlock {
  int from_degree = 0;
  int shift = 0;
  Eigen::SparseMatrix<cplx> matrix;  // rows: count(from+shift), cols: count(from)
};

/// M_p restricted to polynomials of degree <= N, written in the orthonormal
/// basis {z^alpha / ||z^alpha||} in graded-lex order. The full matrix is the
/// sum of the shifted block diagonals.
class BlockOperator {
 public:
  BlockOperator(int d, int domain_bound, int codomain_bound, std::vector<OperatorBlock> blocks);

  int dim() const { return d_; }
  int domain_bound() const { return domain_bound_; }
  int codomain_bound() const { return codomain_bound_; }
  std::size_t rows() const { return degree_offset(codomain_bound_ + 1); }
  std::size_t cols() const { return degree_offset(domain_bound_ + 1); }
  const std::vector<OperatorBlock>& blocks() const { return blocks_; }

  /// Offset of the first degree-k index in the global graded-lex order.
  std::size_t degree_offset(int k) const;
  std::size_t degree_count(int k) const { return degree_offset(k + 1) - degree_offset(k); }

  /// All blocks share one shift (p homogeneous); then T*T is block diagonal
  /// by domain degree.
  bool is_homogeneous() const;
  bool is_zero() const;

  /// Every row and every column holds at most one nonzero entry, so the
  /// singular values are the moduli of the entries.
  bool is_weighted_partial_permutation() const;
  double max_abs_entry() const;

  /// y = T x. Each output degree is accumulated by one thread in a fixed
  /// block order, so serial and parallel results are bitwise identical.
  void apply(std::span<const cplx> x, std::span<cplx> y, Exec exec = Exec::parallel) const;
  /// x = T* y, same determinism guarantee.
  void apply_adjoint(std::span<const cplx> y, std::span<cplx> x, Exec exec = Exec::parallel) const;

  /// The block acting on domain degree k (homogeneous operators only);
  /// nullptr when that block is empty.
  const OperatorBlock* block_from(int k) const;

  Eigen::MatrixXcd to_dense() const;
  Eigen::SparseMatrix<cplx, Eigen::RowMajor> to_sparse() const;

  /// The same operator on the smaller truncation: blocks leaving degrees
  /// <= n, codomain bound shrunk by the same amount. Because the graded basis
  /// is a prefix, this equals re-assembling at n.
  BlockOperator restricted(int n) const;

 private:
  int d_;
  int domain_bound_;
  int codomain_bound_;
  std::vector<OperatorBlock> blocks_;
  std::vector<std::vector<std::size_t>> by_target_;  // block ids per codomain degree
  std::vector<std::vector<std::size_t>> by_source_;  // block ids per domain degree
  std::vector<std::size_t> offsets_;                 // degree_offset(0..codomain_bound + 1)
};

/// Matrix of M_p on the degree-<=N truncation: the entry from z^beta to
/// z^gamma is p_{gamma-beta} ||z^gamma|| / ||z^beta|| (zero unless
/// beta <= gamma). Norm ratios are formed as exact rationals and rounded
/// once before the square root.
BlockOperator mult_matrix(const Polynomial& p, int max_degree);

/// Same matrix for an operator with d given explicitly (needed for p = 0
/// where the series still carries d).
inline BlockOperator mult_matrix(const Polynomial& p, int d, int max_degree) {
  if (p.dim() != d) throw InvalidArgument("polynomial dimension differs from ambient d");
  return mult_matrix(p, max_degree);
}

}  // namespace dalab
