// Copyright 2026 The dalab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "dalab/error.hpp"
#include "dalab/fockcore/multi_index.hpp"
#include "dalab/fockcore/rational.hpp"

namespace dalab {

/// Sparse power series / polynomial in d variables over the scalar S
/// (std::complex<double> or QComplex). Absent coefficients are zero.
///
/// A series may carry a truncation bound N: coefficients of degree <= N are
/// known, anything above is unknown rather than zero. Polynomials proper
/// have no truncation.
template <class S>
class Series {
 public:
  using Scalar = S;
  using Map = std::map<MultiIndex, S>;

  explicit Series(int d, std::optional<int> truncation = std::nullopt) : d_(d), truncation_(truncation) {
    if (d < 1) throw InvalidArgument("invalid dimension " + std::to_string(d));
    if (truncation && *truncation < 0) throw InvalidArgument("negative truncation bound");
  }

  static Series constant(int d, const S& c) {
    Series s(d);
    s.add_term(MultiIndex::zero(d), c);
    return s;
  }

  static Series monomial(const MultiIndex& alpha, const S& c = S{1}) {
    Series s(alpha.dim());
    s.add_term(alpha, c);
    return s;
  }

  /// z_i with i zero-based.
  static Series coordinate(int d, int i) { return monomial(MultiIndex::unit(d, i)); }

  int dim() const { return d_; }
  std::optional<int> truncation() const { return truncation_; }
  const Map& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  S coeff(const MultiIndex& alpha) const {
    auto it = terms_.find(alpha);
    return it == terms_.end() ? S{0} : it->second;
  }

  /// Accumulates c into the coefficient of z^alpha; exact zeros are erased.
  void add_term(const MultiIndex& alpha, const S& c) {
    if (alpha.dim() != d_) throw InvalidArgument("term dimension mismatch");
    if (truncation_ && alpha.degree() > *truncation_)
      throw InvalidArgument("term " + alpha.to_string() + " beyond truncation bound");
    if (is_zero_scalar(c)) return;
    auto [it, inserted] = terms_.emplace(alpha, c);
    if (!inserted) {
      it->second += c;
      if (is_zero_scalar(it->second)) terms_.erase(it);
    }
  }

  /// Highest degree with a nonzero coefficient, -1 for the zero series.
  int degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first.degree(); }
  /// Lowest degree with a nonzero coefficient, -1 for the zero series.
  int low_degree() const { return terms_.empty() ? -1 : terms_.begin()->first.degree(); }

  std::vector<int> degrees() const {
    std::vector<int> out;
    for (const auto& [a, c] : terms_)
      if (out.empty() || out.back() != a.degree()) out.push_back(a.degree());
    return out;
  }

  bool is_homogeneous() const { return degrees().size() <= 1; }

  Series homogeneous_part(int m) const {
    Series out(d_);
    for (const auto& [a, c] : terms_)
      if (a.degree() == m) out.terms_.emplace(a, c);
    return out;
  }

  /// Drops every coefficient above degree n and records n as the truncation.
  Series truncated(int n) const {
    Series out(d_, truncation_ ? std::min(n, *truncation_) : n);
    for (const auto& [a, c] : terms_)
      if (a.degree() <= n) out.terms_.emplace(a, c);
    return out;
  }

  Series without_truncation() const {
    Series out(d_);
    out.terms_ = terms_;
    return out;
  }

  S evaluate(std::span<const S> z) const {
    if (static_cast<int>(z.size()) != d_) throw InvalidArgument("evaluation point dimension mismatch");
    S total{0};
    for (const auto& [a, c] : terms_) total += c * monomial_value(a, z);
    return total;
  }

  template <class F>
  Series map_coefficients(F&& f) const {
    Series out(d_, truncation_);
    for (const auto& [a, c] : terms_) out.add_term(a, f(a, c));
    return out;
  }

  Series& operator+=(const Series& o) {
    check_dim(o);
    truncation_ = min_bound(truncation_, o.truncation_);
    for (const auto& [a, c] : o.terms_)
      if (!truncation_ || a.degree() <= *truncation_) add_term(a, c);
    if (truncation_) drop_above(*truncation_);
    return *this;
  }

  Series& operator-=(const Series& o) {
    Series neg = o * S{-1};
    return *this += neg;
  }

  friend Series operator+(Series a, const Series& b) { return a += b; }
  friend Series operator-(Series a, const Series& b) { return a -= b; }

  friend Series operator*(const Series& a, const S& s) {
    Series out(a.d_, a.truncation_);
    if (is_zero_scalar(s)) return out;
    for (const auto& [k, c] : a.terms_) out.add_term(k, c * s);
    return out;
  }
  friend Series operator*(const S& s, const Series& a) { return a * s; }

  friend Series operator*(const Series& a, const Series& b) {
    a.check_dim(b);
    std::optional<int> bound;
    if (a.truncation_) bound = *a.truncation_ + std::max(b.low_degree(), 0);
    if (b.truncation_) bound = min_bound(bound, *b.truncation_ + std::max(a.low_degree(), 0));
    Series out(a.d_, bound);
    for (const auto& [ka, ca] : a.terms_)
      for (const auto& [kb, cb] : b.terms_) {
        MultiIndex k = ka + kb;
        if (bound && k.degree() > *bound) continue;
        out.add_term(k, ca * cb);
      }
    return out;
  }

  Series pow(int n) const {
    if (n < 0) throw InvalidArgument("negative power");
    Series result = constant(d_, S{1});
    Series base = *this;
    while (n > 0) {
      if (n & 1) result = result * base;
      n >>= 1;
      if (n) base = base * base;
    }
    return result;
  }

  friend bool operator==(const Series& a, const Series& b) {
    return a.d_ == b.d_ && a.truncation_ == b.truncation_ && a.terms_ == b.terms_;
  }

  static S monomial_value(const MultiIndex& a, std::span<const S> z) {
    S v{1};
    for (int i = 0; i < a.dim(); ++i)
      for (int e = 0; e < a[i]; ++e) v *= z[static_cast<std::size_t>(i)];
    return v;
  }

 private:
  static std::optional<int> min_bound(std::optional<int> x, std::optional<int> y) {
    if (!x) return y;
    if (!y) return x;
    return std::min(*x, *y);
  }

  void check_dim(const Series& o) const {
    if (o.d_ != d_) throw InvalidArgument("series dimension mismatch");
  }

  void drop_above(int n) {
    for (auto it = terms_.begin(); it != terms_.end();)
      it = it->first.degree() > n ? terms_.erase(it) : std::next(it);
  }

  int d_;
  std::optional<int> truncation_;
  Map terms_;
};

using FockVector = Series<cplx>;
using Polynomial = Series<cplx>;
using ExactSeries = Series<QComplex>;

inline Polynomial to_float(const ExactSeries& s) {
  Polynomial out(s.dim(), s.truncation());
  for (const auto& [a, c] : s.terms()) out.add_term(a, c.to_cplx());
  return out;
}

}  // namespace dalab
