// Copyright 2026 The dalab Authors
// SPDX-License-Identifier: Apache-2.0

#include "dalab/fockcore/rational.hpp"

#include <algorithm>

namespace dalab {

Integer factorial(unsigned n) {
  Integer r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

Integer binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  Integer r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

double binomial_double(unsigned n, unsigned k) {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (unsigned i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / i;
  return r;
}

std::ostream& operator<<(std::ostream& os, const QComplex& z) {
  return os << '(' << z.re << ',' << z.im << ')';
}

}  // namespace dalab
