// Copyright 2026 The dalab Authors
// SPDX-License-Identifier: Apache-2.0

#include "dalab/multop/norms.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

#include "dalab/error.hpp"

namespace dalab {

namespace {

using ConstVecMap = Eigen::Map<const Eigen::VectorXcd>;
using VecMap = Eigen::Map<Eigen::VectorXcd>;

// Index of the largest-norm column: restart seed when all-ones is annihilated.
std::size_t heaviest_column(const Eigen::SparseMatrix<cplx>& m) {
  std::size_t best = 0;
  double best_norm = -1.0;
  for (int c = 0; c < m.outerSize(); ++c) {
    double s = 0.0;
    for (Eigen::SparseMatrix<cplx>::InnerIterator it(m, c); it; ++it) s += std::norm(it.value());
    if (s > best_norm) {
      best_norm = s;
      best = static_cast<std::size_t>(c);
    }
  }
  return best;
}

std::size_t heaviest_column(const BlockOperator& t) {
  std::vector<double> col(t.cols(), 0.0);
  for (const auto& b : t.blocks()) {
    const std::size_t c0 = t.degree_offset(b.from_degree);
    for (int c = 0; c < b.matrix.outerSize(); ++c)
      for (Eigen::SparseMatrix<cplx>::InnerIterator it(b.matrix, c); it; ++it)
        col[c0 + static_cast<std::size_t>(c)] += std::norm(it.value());
  }
  return static_cast<std::size_t>(std::max_element(col.begin(), col.end()) - col.begin());
}

double sparse_block_norm(const Eigen::SparseMatrix<cplx>& m, const PowerOptions& opt) {
  if (m.nonZeros() == 0) return 0.0;
  Eigen::VectorXcd tmp(m.rows());
  auto normal = [&](std::span<const cplx> x, std::span<cplx> y) {
    ConstVecMap in(x.data(), static_cast<Eigen::Index>(x.size()));
    VecMap out(y.data(), static_cast<Eigen::Index>(y.size()));
    tmp.noalias() = m * in;
    out.noalias() = m.adjoint() * tmp;
  };
  return power_iterate(static_cast<std::size_t>(m.cols()), normal, opt, heaviest_column(m)).sigma;
}

using RowSparse = Eigen::SparseMatrix<cplx, Eigen::RowMajor>;

// y = A x with rows split across threads; every row is one fixed-order dot
// product, so the chunking never changes the bits.
void row_chunked_product(const RowSparse& a, std::span<const cplx> x, std::span<cplx> y, Exec exec) {
  constexpr Eigen::Index kChunk = 256;
  const Eigen::Index nchunks = (a.rows() + kChunk - 1) / kChunk;
  ConstVecMap in(x.data(), static_cast<Eigen::Index>(x.size()));
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
  for (Eigen::Index c = 0; c < nchunks; ++c) {
    const Eigen::Index r0 = c * kChunk;
    const Eigen::Index len = std::min(kChunk, a.rows() - r0);
    VecMap out(y.data() + r0, len);
    out.noalias() = a.middleRows(r0, len) * in;
  }
}

// Whole-operator iteration on one assembled matrix. Rotated or otherwise
// dense symbols fill most of each block pair, so a single CSR beats the
// per-block products by a wide margin.
double whole_operator_norm(const BlockOperator& t, const PowerOptions& opt, Exec exec) {
  const RowSparse a = t.to_sparse();
  const RowSparse ah = a.adjoint();
  std::vector<cplx> tmp(t.rows());
  auto normal = [&](std::span<const cplx> x, std::span<cplx> y) {
    row_chunked_product(a, x, tmp, exec);
    row_chunked_product(ah, tmp, y, exec);
  };
  return power_iterate(t.cols(), normal, opt, heaviest_column(t)).sigma;
}

double block_apply_norm(const BlockOperator& t, const PowerOptions& opt) {
  std::vector<cplx> tmp(t.rows());
  auto normal = [&](std::span<const cplx> x, std::span<cplx> y) {
    t.apply(x, tmp, Exec::serial);
    t.apply_adjoint(tmp, y, Exec::serial);
  };
  return power_iterate(t.cols(), normal, opt, heaviest_column(t)).sigma;
}

}  // namespace

std::vector<double> block_norms(const BlockOperator& t, double tol, Exec exec, long max_iterations) {
  if (!t.is_homogeneous()) throw InvalidArgument("block_norms requires a homogeneous operator");
  const PowerOptions opt{tol, max_iterations};
  const int nblocks = t.domain_bound() + 1;
  std::vector<double> out(static_cast<std::size_t>(nblocks), 0.0);
  // Exceptions cannot leave an OpenMP region; collect and rethrow.
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(nblocks));
#pragma omp parallel for schedule(dynamic) if (exec == Exec::parallel)
  for (int k = 0; k < nblocks; ++k) {
    try {
      const OperatorBlock* b = t.block_from(k);
      if (b) out[static_cast<std::size_t>(k)] = sparse_block_norm(b->matrix, opt);
    } catch (...) {
      errors[static_cast<std::size_t>(k)] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

double op_norm(const BlockOperator& t, double tol, Exec exec, long max_iterations) {
  if (!(tol > 0.0)) throw InvalidArgument("op_norm tolerance must be positive");
  if (t.is_zero()) return 0.0;
  if (t.is_weighted_partial_permutation()) return t.max_abs_entry();
  if (t.is_homogeneous()) {
    const auto norms = block_norms(t, tol, exec, max_iterations);
    return *std::max_element(norms.begin(), norms.end());
  }
  return whole_operator_norm(t, PowerOptions{tol, max_iterations}, exec);
}

double op_norm_reference(const BlockOperator& t, double tol, long max_iterations) {
  if (!(tol > 0.0)) throw InvalidArgument("op_norm tolerance must be positive");
  return block_apply_norm(t, PowerOptions{tol, max_iterations});
}

double dense_op_norm(const Eigen::MatrixXcd& m) {
  if (m.size() == 0) return 0.0;
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

double dense_power_norm(const Eigen::MatrixXcd& m, double tol, long max_iterations) {
  if (m.size() == 0) return 0.0;
  Eigen::VectorXcd tmp(m.rows());
  auto normal = [&](std::span<const cplx> x, std::span<cplx> y) {
    ConstVecMap in(x.data(), static_cast<Eigen::Index>(x.size()));
    VecMap out(y.data(), static_cast<Eigen::Index>(y.size()));
    tmp.noalias() = m * in;
    out.noalias() = m.adjoint() * tmp;
  };
  Eigen::Index best = 0;
  m.colwise().squaredNorm().maxCoeff(&best);
  return power_iterate(static_cast<std::size_t>(m.cols()), normal, PowerOptions{tol, max_iterations},
                       static_cast<std::size_t>(best))
      .sigma;
}

NormEstimate multiplier_norm(const Polynomial& p, int n_max, double tol, Exec exec) {
  if (!(tol > 0.0)) throw InvalidArgument("multiplier_norm tolerance must be positive");
  if (n_max < std::max(p.degree(), 0)) throw InvalidArgument("multiplier_norm needs n_max >= deg p");
  NormEstimate est;
  est.tolerance = tol;
  if (p.is_zero()) {
    est.sweep.emplace_back(0, 0.0);
    est.converged = true;
    return est;
  }
  if (p.is_homogeneous()) {
    // Restricted norm at N is the max of the block norms for degrees <= N.
    const BlockOperator t = mult_matrix(p, n_max);
    std::vector<double> norms;
    if (t.is_weighted_partial_permutation()) {
      for (int k = 0; k <= n_max; ++k) {
        const OperatorBlock* b = t.block_from(k);
        double m = 0.0;
        if (b)
          for (int c = 0; c < b->matrix.outerSize(); ++c)
            for (Eigen::SparseMatrix<cplx>::InnerIterator it(b->matrix, c); it; ++it)
              m = std::max(m, std::abs(it.value()));
        norms.push_back(m);
      }
    } else {
      norms = block_norms(t, tol, exec);
    }
    double run = 0.0;
    for (int n = 0; n <= n_max; ++n) {
      run = std::max(run, norms[static_cast<std::size_t>(n)]);
      est.sweep.emplace_back(n, run);
    }
  } else {
    const BlockOperator full = mult_matrix(p, n_max);
    for (int n = 0; n <= n_max; ++n) est.sweep.emplace_back(n, op_norm(full.restricted(n), tol, exec));
  }
  est.value = est.sweep.back().second;
  if (est.sweep.size() >= 2) {
    const double prev = est.sweep[est.sweep.size() - 2].second;
    est.converged = std::abs(est.value - prev) < tol * est.value;
  } else {
    est.converged = p.degree() == 0;
  }
  return est;
}

nlohmann::json to_json(const NormEstimate& e) {
  nlohmann::json sweep = nlohmann::json::array();
  for (const auto& [n, v] : e.sweep) sweep.push_back({{"N", n}, {"norm", v}});
  return {{"value", e.value}, {"sweep", sweep}, {"converged", e.converged}, {"tolerance", e.tolerance}};
}

}  // namespace dalab
