// Copyright 2026 The dalab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "dalab/fockcore/multi_index.hpp"
#include "dalab/fockcore/rational.hpp"

namespace dalab {

/// Word over the alphabet {1, ..., d}; indexes the orthonormal basis xi_w of
/// the full Fock space.
struct Word {
  std::vector<int> letters;

  std::size_t length() const { return letters.size(); }
  auto operator<=>(const Word&) const = default;
  std::string to_string() const;
};

inline constexpr int kDefaultWordLengthCap = 8;
inline constexpr int kDefaultFullFockDimCap = 3;

/// Size limits of the full Fock model (d^N words at length N).
struct FullFockCaps {
  int max_dim = kDefaultFullFockDimCap;
  int max_length = kDefaultWordLengthCap;
};

/// Finitely supported vector in the full Fock space over C^d, truncated to
/// words of length <= length_bound. The xi_w are orthonormal.
template <class S>
class WordSeries {
 public:
  WordSeries(int d, int length_bound) : d_(d), bound_(length_bound) {}

  int dim() const { return d_; }
  int length_bound() const { return bound_; }
  const std::map<Word, S>& terms() const { return terms_; }

  S coeff(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? S{0} : it->second;
  }

  void add(const Word& w, const S& c);

  /// Left creation operator: xi_w -> xi_{k w}. Words that would exceed the
  /// length bound are an error.
  WordSeries left_create(int letter) const;

 private:
  int d_;
  int bound_;
  std::map<Word, S> terms_;
};

using FullFockVector = WordSeries<cplx>;

template <class S>
S full_inner_product(const WordSeries<S>& a, const WordSeries<S>& b) {
  S total{0};
  for (const auto& [w, c] : a.terms()) {
    auto it = b.terms().find(w);
    if (it != b.terms().end()) total += c * conj_of(it->second);
  }
  return total;
}

/// Every word whose letter multiplicities are alpha, in lex order.
std::vector<Word> words_with_content(const MultiIndex& alpha);

/// Unit vector in the full Fock space equal to the normalized
/// symmetrization of any word with letter multiplicities alpha. Under the
/// identification z^alpha/||z^alpha|| <-> symmetric_embedding(alpha) the
/// symmetric Fock space sits isometrically inside the full one.
FullFockVector symmetric_embedding(const MultiIndex& alpha, int length_bound = kDefaultWordLengthCap);

/// Unnormalized symmetrization sum_w xi_w with integer coefficients; its
/// squared norm is |alpha|!/alpha!.
WordSeries<QComplex> symmetrized_words(const MultiIndex& alpha, int length_bound = kDefaultWordLengthCap);

struct CompressionReport {
  int dim = 0;
  int letter = 0;
  int length_bound = 0;
  std::size_t entries_compared = 0;
  std::size_t mismatches = 0;
  /// max |entry(P_sym L_k iota) - entry(M_{z_k})| over the compared entries;
  /// exactly 0 when every squared entry agrees as a rational.
  double max_deviation = 0.0;
};

/// Assembles P_sym L_k iota on the embedded symmetric basis of degree <= N-1
/// (codomain degree <= N) and compares every entry with the matrix of M_{z_k}
/// in the orthonormal monomial basis. Both sides are non-negative, so the
/// comparison is done exactly on squared entries.
CompressionReport compression_check(int d, int letter, int length_bound, FullFockCaps caps = {});

}  // namespace dalab
