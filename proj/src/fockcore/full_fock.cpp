// Copyright 2026 The dalab Authors
// SPDX-License-Identifier: Apache-2.0

#include "dalab/fockcore/full_fock.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "dalab/error.hpp"

namespace dalab {

std::string Word::to_string() const {
  std::ostringstream os;
  for (int l : letters) os << l;
  return letters.empty() ? "()" : os.str();
}

template <class S>
void WordSeries<S>::add(const Word& w, const S& c) {
  if (static_cast<int>(w.length()) > bound_) throw InvalidArgument("word exceeds full Fock length bound");
  for (int l : w.letters)
    if (l < 1 || l > d_) throw InvalidArgument("letter outside alphabet");
  if (is_zero_scalar(c)) return;
  auto [it, inserted] = terms_.emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (is_zero_scalar(it->second)) terms_.erase(it);
  }
}

template <class S>
WordSeries<S> WordSeries<S>::left_create(int letter) const {
  if (letter < 1 || letter > d_) throw InvalidArgument("letter outside alphabet");
  WordSeries out(d_, bound_);
  for (const auto& [w, c] : terms_) {
    Word kw;
    kw.letters.reserve(w.length() + 1);
    kw.letters.push_back(letter);
    kw.letters.insert(kw.letters.end(), w.letters.begin(), w.letters.end());
    out.add(kw, c);
  }
  return out;
}

template class WordSeries<cplx>;
template class WordSeries<QComplex>;

std::vector<Word> words_with_content(const MultiIndex& alpha) {
  std::vector<int> letters;
  for (int i = 0; i < alpha.dim(); ++i) letters.insert(letters.end(), static_cast<std::size_t>(alpha[i]), i + 1);
  std::vector<Word> out;
  do {
    out.push_back(Word{letters});
  } while (std::next_permutation(letters.begin(), letters.end()));
  return out;
}

namespace {

void check_embedding_args(const MultiIndex& alpha, int length_bound) {
  if (alpha.degree() > length_bound)
    throw InvalidArgument("degree " + std::to_string(alpha.degree()) + " exceeds full Fock length bound " +
                          std::to_string(length_bound));
}

}  // namespace

FullFockVector symmetric_embedding(const MultiIndex& alpha, int length_bound) {
  check_embedding_args(alpha, length_bound);
  const auto words = words_with_content(alpha);
  const double c = 1.0 / std::sqrt(static_cast<double>(words.size()));
  FullFockVector out(alpha.dim(), length_bound);
  for (const auto& w : words) out.add(w, cplx{c, 0.0});
  return out;
}

WordSeries<QComplex> symmetrized_words(const MultiIndex& alpha, int length_bound) {
  check_embedding_args(alpha, length_bound);
  WordSeries<QComplex> out(alpha.dim(), length_bound);
  for (const auto& w : words_with_content(alpha)) out.add(w, QComplex{1});
  return out;
}

CompressionReport compression_check(int d, int letter, int length_bound, FullFockCaps caps) {
  if (d < 1) throw InvalidArgument("invalid dimension " + std::to_string(d));
  if (letter < 1 || letter > d) throw InvalidArgument("letter index must satisfy 1 <= k <= d");
  if (length_bound < 1) throw InvalidArgument("length bound must be >= 1");
  if (d > caps.max_dim || length_bound > caps.max_length)
    throw InvalidArgument("full Fock model limited to d <= " + std::to_string(caps.max_dim) + ", N <= " +
                          std::to_string(caps.max_length));

  CompressionReport rep;
  rep.dim = d;
  rep.letter = letter;
  rep.length_bound = length_bound;

  // Codomain basis: every symmetric basis vector of degree <= N, with its
  // squared normalization |gamma|!/gamma!.
  std::vector<std::pair<MultiIndex, WordSeries<QComplex>>> codomain;
  for (int k = 0; k <= length_bound; ++k)
    for (const auto& g : enum_multiindices(d, k)) codomain.emplace_back(g, symmetrized_words(g, length_bound));

  const MultiIndex shift = MultiIndex::unit(d, letter - 1);
  for (int k = 0; k + 1 <= length_bound; ++k) {
    for (const auto& b : enum_multiindices(d, k)) {
      const auto image = symmetrized_words(b, length_bound).left_create(letter);
      const Rational nb(multinomial(b));
      for (const auto& [g, wg] : codomain) {
        // Full Fock side: <L_k W_b, W_g>^2 / (n_b n_g).
        const QComplex pairing = full_inner_product(image, wg);
        const Rational fock_sq = pairing.norm() / (nb * Rational(multinomial(g)));
        // Multiplier side: ||z^g||^2 / ||z^b||^2 when g = b + e_k.
        const Rational mult_sq = (g == b + shift) ? monomial_norm_sq(g) / monomial_norm_sq(b) : Rational(0);
        ++rep.entries_compared;
        if (fock_sq != mult_sq) {
          ++rep.mismatches;
          const double dev = std::abs(std::sqrt(to_double(fock_sq)) - std::sqrt(to_double(mult_sq)));
          rep.max_deviation = std::max(rep.max_deviation, dev);
          if (rep.max_deviation == 0.0) rep.max_deviation = std::numeric_limits<double>::min();
        }
      }
    }
  }
  return rep;
}

}  // namespace dalab
