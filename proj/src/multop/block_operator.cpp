// Copyright 2026 The dalab Authors
// SPDX-License-Identifier: Apache-2.0

#include "dalab/multop/block_operator.hpp"

#include <algorithm>
#include <cmath>

#include "dalab/error.hpp"

namespace dalab {

namespace {

using ConstVecMap = Eigen::Map<const Eigen::VectorXcd>;
using VecMap = Eigen::Map<Eigen::VectorXcd>;

}  // namespace

BlockOperator::BlockOperator(int d, int domain_bound, int codomain_bound, std::vector<OperatorBlock> blocks)
    : d_(d), domain_bound_(domain_bound), codomain_bound_(codomain_bound), blocks_(std::move(blocks)) {
  if (d < 1) throw InvalidArgument("invalid dimension " + std::to_string(d));
  for (int k = 0; k <= codomain_bound_ + 1; ++k)
    offsets_.push_back(k == 0 ? 0 : count_multiindices(d_ + 1, k - 1));
  std::sort(blocks_.begin(), blocks_.end(), [](const OperatorBlock& a, const OperatorBlock& b) {
    return a.from_degree != b.from_degree ? a.from_degree < b.from_degree : a.shift < b.shift;
  });
  by_target_.resize(static_cast<std::size_t>(codomain_bound_) + 1);
  by_source_.resize(static_cast<std::size_t>(domain_bound_) + 1);
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    const auto& b = blocks_[i];
    const int to = b.from_degree + b.shift;
    if (b.from_degree < 0 || b.from_degree > domain_bound_ || to > codomain_bound_ || b.shift < 0)
      throw InvalidArgument("block outside operator bounds");
    if (static_cast<std::size_t>(b.matrix.cols()) != degree_count(b.from_degree) ||
        static_cast<std::size_t>(b.matrix.rows()) != degree_count(to))
      throw InvalidArgument("block shape does not match graded basis");
    by_target_[static_cast<std::size_t>(to)].push_back(i);
    by_source_[static_cast<std::size_t>(b.from_degree)].push_back(i);
  }
}

std::size_t BlockOperator::degree_offset(int k) const {
  // Number of monomials of degree < k in d variables: C(k-1+d, d).
  if (k <= 0) return 0;
  if (k < static_cast<int>(offsets_.size())) return offsets_[static_cast<std::size_t>(k)];
  return count_multiindices(d_ + 1, k - 1);
}

bool BlockOperator::is_homogeneous() const {
  for (const auto& b : blocks_)
    if (b.shift != blocks_.front().shift) return false;
  return true;
}

bool BlockOperator::is_zero() const {
  for (const auto& b : blocks_)
    if (b.matrix.nonZeros() != 0) return false;
  return true;
}

bool BlockOperator::is_weighted_partial_permutation() const {
  std::vector<int> row_count(rows(), 0);
  std::vector<int> col_count(cols(), 0);
  for (const auto& b : blocks_) {
    const std::size_t r0 = degree_offset(b.from_degree + b.shift);
    const std::size_t c0 = degree_offset(b.from_degree);
    for (int c = 0; c < b.matrix.outerSize(); ++c)
      for (Eigen::SparseMatrix<cplx>::InnerIterator it(b.matrix, c); it; ++it) {
        if (it.value() == cplx{0.0, 0.0}) continue;
        if (++row_count[r0 + static_cast<std::size_t>(it.row())] > 1) return false;
        if (++col_count[c0 + static_cast<std::size_t>(it.col())] > 1) return false;
      }
  }
  return true;
}

double BlockOperator::max_abs_entry() const {
  double m = 0.0;
  for (const auto& b : blocks_)
    for (int c = 0; c < b.matrix.outerSize(); ++c)
      for (Eigen::SparseMatrix<cplx>::InnerIterator it(b.matrix, c); it; ++it) m = std::max(m, std::abs(it.value()));
  return m;
}

void BlockOperator::apply(std::span<const cplx> x, std::span<cplx> y, Exec exec) const {
  if (x.size() != cols() || y.size() != rows()) throw InvalidArgument("apply: vector sizes do not match operator");
  const long targets = static_cast<long>(by_target_.size());
#pragma omp parallel for schedule(dynamic) if (exec == Exec::parallel)
  for (long j = 0; j < targets; ++j) {
    const std::size_t r0 = degree_offset(static_cast<int>(j));
    VecMap out(y.data() + r0, static_cast<Eigen::Index>(degree_count(static_cast<int>(j))));
    out.setZero();
    for (std::size_t id : by_target_[static_cast<std::size_t>(j)]) {
      const auto& b = blocks_[id];
      ConstVecMap in(x.data() + degree_offset(b.from_degree), b.matrix.cols());
      out.noalias() += b.matrix * in;
    }
  }
}

void BlockOperator::apply_adjoint(std::span<const cplx> y, std::span<cplx> x, Exec exec) const {
  if (x.size() != cols() || y.size() != rows())
    throw InvalidArgument("apply_adjoint: vector sizes do not match operator");
  const long sources = static_cast<long>(by_source_.size());
#pragma omp parallel for schedule(dynamic) if (exec == Exec::parallel)
  for (long k = 0; k < sources; ++k) {
    const std::size_t c0 = degree_offset(static_cast<int>(k));
    VecMap out(x.data() + c0, static_cast<Eigen::Index>(degree_count(static_cast<int>(k))));
    out.setZero();
    for (std::size_t id : by_source_[static_cast<std::size_t>(k)]) {
      const auto& b = blocks_[id];
      ConstVecMap in(y.data() + degree_offset(b.from_degree + b.shift), b.matrix.rows());
      out.noalias() += b.matrix.adjoint() * in;
    }
  }
}

const OperatorBlock* BlockOperator::block_from(int k) const {
  if (k < 0 || k > domain_bound_) return nullptr;
  const auto& ids = by_source_[static_cast<std::size_t>(k)];
  if (ids.empty()) return nullptr;
  if (ids.size() > 1) throw InvalidArgument("block_from requires a homogeneous operator");
  return &blocks_[ids.front()];
}

Eigen::MatrixXcd BlockOperator::to_dense() const {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(rows()), static_cast<Eigen::Index>(cols()));
  for (const auto& b : blocks_) {
    const auto r0 = static_cast<Eigen::Index>(degree_offset(b.from_degree + b.shift));
    const auto c0 = static_cast<Eigen::Index>(degree_offset(b.from_degree));
    m.block(r0, c0, b.matrix.rows(), b.matrix.cols()) += Eigen::MatrixXcd(b.matrix);
  }
  return m;
}

Eigen::SparseMatrix<cplx, Eigen::RowMajor> BlockOperator::to_sparse() const {
  std::vector<Eigen::Triplet<cplx>> trip;
  for (const auto& b : blocks_) {
    const auto r0 = static_cast<int>(degree_offset(b.from_degree + b.shift));
    const auto c0 = static_cast<int>(degree_offset(b.from_degree));
    for (int c = 0; c < b.matrix.outerSize(); ++c)
      for (Eigen::SparseMatrix<cplx>::InnerIterator it(b.matrix, c); it; ++it)
        trip.emplace_back(r0 + static_cast<int>(it.row()), c0 + static_cast<int>(it.col()), it.value());
  }
  Eigen::SparseMatrix<cplx, Eigen::RowMajor> m(static_cast<Eigen::Index>(rows()), static_cast<Eigen::Index>(cols()));
  m.setFromTriplets(trip.begin(), trip.end());
  m.makeCompressed();
  return m;
}

BlockOperator BlockOperator::restricted(int n) const {
  if (n < 0 || n > domain_bound_) throw InvalidArgument("restriction bound outside operator domain");
  std::vector<OperatorBlock> kept;
  for (const auto& b : blocks_)
    if (b.from_degree <= n) kept.push_back(b);
  return BlockOperator(d_, n, codomain_bound_ - (domain_bound_ - n), std::move(kept));
}

BlockOperator mult_matrix(const Polynomial& p, int max_degree) {
  if (max_degree < 0) throw InvalidArgument("negative truncation degree");
  if (p.truncation()) throw InvalidArgument("multiplier symbol must be a polynomial, not a truncated series");
  const int d = p.dim();
  const int deg = std::max(p.degree(), 0);
  const int codomain = max_degree + deg;
  GradedBasis basis(d, codomain);

  // |alpha|!/alpha! for every basis index: ||z^g||^2/||z^b||^2 = mult(b)/mult(g).
  std::vector<Integer> mult;
  mult.reserve(basis.size());
  for (const auto& a : basis.indices()) mult.push_back(multinomial(a));

  std::vector<OperatorBlock> blocks;
  for (int m : p.degrees()) {
    const Polynomial part = p.homogeneous_part(m);
    for (int k = 0; k <= max_degree; ++k) {
      const std::size_t c0 = basis.offset(k);
      const std::size_t r0 = basis.offset(k + m);
      std::vector<Eigen::Triplet<cplx>> trip;
      trip.reserve(basis.count(k) * part.size());
      for (std::size_t c = 0; c < basis.count(k); ++c) {
        const MultiIndex& beta = basis.index(c0 + c);
        for (const auto& [delta, coef] : part.terms()) {
          const MultiIndex gamma = beta + delta;
          const std::size_t r = basis.position(gamma);
          const Rational ratio(mult[c0 + c], mult[r]);
          trip.emplace_back(static_cast<int>(r - r0), static_cast<int>(c), coef * std::sqrt(to_double(ratio)));
        }
      }
      OperatorBlock blk;
      blk.from_degree = k;
      blk.shift = m;
      blk.matrix.resize(static_cast<Eigen::Index>(basis.count(k + m)), static_cast<Eigen::Index>(basis.count(k)));
      blk.matrix.setFromTriplets(trip.begin(), trip.end());
      blk.matrix.makeCompressed();
      blocks.push_back(std::move(blk));
    }
  }
  return BlockOperator(d, max_degree, codomain, std::move(blocks));
}

}  // namespace dalab
