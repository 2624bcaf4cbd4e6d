// Copyright 2026 The dalab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "dalab/error.hpp"
#include "dalab/fockcore/series.hpp"

namespace dalab {

/// <v, w> in H^2_d: sum over alpha of v_alpha conj(w_alpha) alpha!/|alpha|!.
template <class S>
S inner_product(const Series<S>& v, const Series<S>& w) {
  if (v.dim() != w.dim()) throw InvalidArgument("inner product dimension mismatch");
  S total{0};
  const auto& small = v.size() <= w.size() ? v.terms() : w.terms();
  const bool v_small = v.size() <= w.size();
  for (const auto& [a, c] : small) {
    const S other = v_small ? w.coeff(a) : v.coeff(a);
    if (is_zero_scalar(other)) continue;
    const S pair = v_small ? c * conj_of(other) : other * conj_of(c);
    total += pair * monomial_weight<S>(a);
  }
  return total;
}

inline double norm_sq(const FockVector& v) { return inner_product(v, v).real(); }
inline double norm(const FockVector& v) { return std::sqrt(norm_sq(v)); }

/// sum_alpha v_alpha z^alpha over the stored coefficients.
template <class S>
S evaluate(const Series<S>& v, std::span<const S> z) {
  return v.evaluate(z);
}

inline cplx evaluate(const FockVector& v, std::initializer_list<cplx> z) {
  std::vector<cplx> p(z);
  return v.evaluate(p);
}

inline bool in_open_ball(std::span<const cplx> z) {
  double s = 0.0;
  for (const auto& c : z) s += std::norm(c);
  return s < 1.0;
}

inline bool in_open_ball(std::span<const QComplex> z) {
  Rational s = 0;
  for (const auto& c : z) s += c.norm();
  return s < 1;
}

/// Degree-N truncation of the reproducing kernel k_z: the coefficient of
/// w^alpha is (|alpha|!/alpha!) conj(z)^alpha, so <p, k_z> = p(z) for every
/// polynomial of degree <= N.
template <class S>
Series<S> kernel_vector(std::span<const S> z, int max_degree) {
  if (z.empty()) throw InvalidArgument("invalid dimension 0");
  if (!in_open_ball(z)) throw InvalidArgument("kernel point must lie in the open unit ball");
  const int d = static_cast<int>(z.size());
  std::vector<S> zbar;
  zbar.reserve(z.size());
  for (const auto& c : z) zbar.push_back(conj_of(c));
  Series<S> out(d, max_degree);
  for (int k = 0; k <= max_degree; ++k)
    for (const auto& a : enum_multiindices(d, k)) {
      const S c = from_rational<S>(Rational(multinomial(a))) * Series<S>::monomial_value(a, zbar);
      out.add_term(a, c);
    }
  return out;
}

inline FockVector kernel_vector(std::initializer_list<cplx> z, int max_degree) {
  std::vector<cplx> p(z);
  return kernel_vector<cplx>(std::span<const cplx>(p), max_degree);
}

struct ReproducingReport {
  int dim = 0;
  int degree = 0;
  std::size_t cases = 0;
  std::size_t matches = 0;
  std::vector<std::size_t> failures;  // case indices where <p, k_z> != p(z)
};

/// Exact check of <p, kernel_vector(z, N)> = p(z) on `cases` random
/// Gaussian-rational polynomials of degree <= N and rational points of the
/// open ball, drawn from mt19937_64(seed).
ReproducingReport reproducing_check(int d, int degree, std::size_t cases, std::uint64_t seed);

}  // namespace dalab
