// Copyright 2026 The dalab Authors
// SPDX-License-Identifier: Apache-2.0

#include <random>

#include "dalab/fockcore/fock.hpp"

namespace dalab {

ReproducingReport reproducing_check(int d, int degree, std::size_t cases, std::uint64_t seed) {
  if (d < 1) throw InvalidArgument("invalid dimension " + std::to_string(d));
  if (degree < 0) throw InvalidArgument("negative degree bound");
  ReproducingReport rep{d, degree, cases, 0, {}};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 9), coin(0, 1), pk(-2, 2), pj(0, 3);
  auto rational = [&] { return Rational(num(rng), den(rng)); };
  for (std::size_t c = 0; c < cases; ++c) {
    ExactSeries p(d);
    for (int k = 0; k <= degree; ++k)
      for (const auto& a : enum_multiindices(d, k))
        if (coin(rng)) p.add_term(a, QComplex{rational(), rational()});
    // |re|, |im| <= 2/(4d) per coordinate keeps |z|^2 <= 1/(2d).
    std::vector<QComplex> z;
    for (int i = 0; i < d; ++i) {
      const Rational re(pk(rng), 4 * d + pj(rng));
      const Rational im(pk(rng), 4 * d + pj(rng));
      z.emplace_back(re, im);
    }
    const ExactSeries k = kernel_vector<QComplex>(std::span<const QComplex>(z), degree);
    if (inner_product(p, k) == p.evaluate(z))
      ++rep.matches;
    else
      rep.failures.push_back(c);
  }
  return rep;
}

}  // namespace dalab
