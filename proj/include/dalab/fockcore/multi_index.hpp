// Copyright 2026 The dalab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "dalab/fockcore/rational.hpp"

namespace dalab {

/// Exponent vector alpha in N_0^d indexing the monomial z^alpha.
///
/// Ordering is graded lexicographic: lower total degree first, and within
/// one degree the exponent vectors compare lexicographically *descending*,
/// so degree 2 in two variables reads (2,0), (1,1), (0,2).
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> exponents);

  static MultiIndex zero(int d);
  /// e_i with i zero-based.
  static MultiIndex unit(int d, int i);

  int dim() const { return static_cast<int>(exps_.size()); }
  int degree() const { return degree_; }
  int operator[](int i) const { return exps_[static_cast<std::size_t>(i)]; }
  std::span<const int> exponents() const { return exps_; }

  /// True when this <= other componentwise (z^this divides z^other).
  bool divides(const MultiIndex& other) const;

  MultiIndex operator+(const MultiIndex& o) const;
  /// Requires divides(o) in reverse, i.e. o <= *this componentwise.
  MultiIndex operator-(const MultiIndex& o) const;

  /// Number of nonzero exponents.
  int support_size() const;

  friend bool operator==(const MultiIndex& a, const MultiIndex& b) {
    return a.exps_ == b.exps_;
  }
  friend std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b);

  std::string to_string() const;

 private:
  std::vector<int> exps_;
  int degree_ = 0;
};

struct MultiIndexHash {
  std::size_t operator()(const MultiIndex& a) const noexcept;
};

/// All multi-indices of length d and degree k in graded-lex order.
/// Throws InvalidArgument for d < 1 or k < 0.
std::vector<MultiIndex> enum_multiindices(int d, int k);

/// C(k+d-1, d-1), the number of monomials of degree k in d variables.
std::size_t count_multiindices(int d, int k);

/// ||z^alpha||^2 = alpha! / |alpha|! in H^2_d, exactly.
Rational monomial_norm_sq(const MultiIndex& alpha);

/// Same quantity in double precision, computed as a product of inverse
/// binomials (no factorial overflow).
double monomial_norm_sq_double(const MultiIndex& alpha);

/// |alpha|! / alpha!, the multinomial coefficient.
Integer multinomial(const MultiIndex& alpha);

/// Weight alpha!/|alpha|! in the scalar type S.
template <class S>
S monomial_weight(const MultiIndex& alpha);

template <>
inline cplx monomial_weight<cplx>(const MultiIndex& alpha) {
  return {monomial_norm_sq_double(alpha), 0.0};
}

template <>
inline QComplex monomial_weight<QComplex>(const MultiIndex& alpha) {
  return QComplex{monomial_norm_sq(alpha)};
}

/// The graded basis {z^alpha : |alpha| <= N} with dense positions.
/// Position of alpha = (number of indices of degree < |alpha|) + rank within
/// its degree.
class GradedBasis {
 public:
  GradedBasis(int d, int max_degree);

  int dim() const { return d_; }
  int max_degree() const { return max_degree_; }
  std::size_t size() const { return indices_.size(); }
  std::size_t offset(int k) const { return offsets_[static_cast<std::size_t>(k)]; }
  std::size_t count(int k) const {
    return offsets_[static_cast<std::size_t>(k) + 1] - offsets_[static_cast<std::size_t>(k)];
  }
  const MultiIndex& index(std::size_t pos) const { return indices_[pos]; }
  const std::vector<MultiIndex>& indices() const { return indices_; }
  /// Position of alpha; alpha must be in the basis.
  std::size_t position(const MultiIndex& alpha) const;
  bool contains(const MultiIndex& alpha) const;

 private:
  int d_;
  int max_degree_;
  std::vector<MultiIndex> indices_;
  std::vector<std::size_t> offsets_;
  std::unordered_map<MultiIndex, std::size_t, MultiIndexHash> positions_;
};

}  // namespace dalab
