// Copyright 2026 The dalab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstdint>
#include <ostream>

#include <boost/multiprecision/gmp.hpp>

namespace dalab {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;
using cplx = std::complex<double>;

Integer factorial(unsigned n);
Integer binomial(unsigned n, unsigned k);

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

/// Binomial coefficient in floating point without overflow for the ranges
/// used here (relative error about 2*min(k, n-k) ulps).
double binomial_double(unsigned n, unsigned k);

/// Gaussian rational a + b i. Used wherever an identity has to hold exactly.
struct QComplex {
  Rational re{0};
  Rational im{0};

  QComplex() = default;
  QComplex(Rational r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  QComplex(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
  QComplex(int r) : re(r) {}  // NOLINT(google-explicit-constructor)

  QComplex& operator+=(const QComplex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  QComplex& operator-=(const QComplex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  QComplex& operator*=(const QComplex& o) {
    Rational r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  QComplex& operator/=(const QComplex& o) {
    const Rational den = o.re * o.re + o.im * o.im;
    Rational r = (re * o.re + im * o.im) / den;
    im = (im * o.re - re * o.im) / den;
    re = std::move(r);
    return *this;
  }

  friend QComplex operator+(QComplex a, const QComplex& b) { return a += b; }
  friend QComplex operator-(QComplex a, const QComplex& b) { return a -= b; }
  friend QComplex operator*(QComplex a, const QComplex& b) { return a *= b; }
  friend QComplex operator/(QComplex a, const QComplex& b) { return a /= b; }
  friend QComplex operator-(const QComplex& a) { return {-a.re, -a.im}; }
  friend bool operator==(const QComplex& a, const QComplex& b) {
    return a.re == b.re && a.im == b.im;
  }

  bool is_zero() const { return re == 0 && im == 0; }
  Rational norm() const { return re * re + im * im; }
  cplx to_cplx() const { return {to_double(re), to_double(im)}; }
};

std::ostream& operator<<(std::ostream& os, const QComplex& z);

// Scalar traits shared by the templated series code: conjugation, zero
// test, and embedding of exact rationals into the scalar field.
inline cplx conj_of(const cplx& z) { return std::conj(z); }
inline QComplex conj_of(const QComplex& z) { return {z.re, -z.im}; }

inline bool is_zero_scalar(const cplx& z) { return z == cplx{0.0, 0.0}; }
inline bool is_zero_scalar(const QComplex& z) { return z.is_zero(); }

template <class S>
S from_rational(const Rational& q);

template <>
inline cplx from_rational<cplx>(const Rational& q) {
  return {to_double(q), 0.0};
}

template <>
inline QComplex from_rational<QComplex>(const Rational& q) {
  return QComplex{q};
}

}  // namespace dalab
