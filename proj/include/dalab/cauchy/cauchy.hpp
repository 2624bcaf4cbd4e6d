// Copyright 2026 The dalab Authors
// SPDX-License-Identifier: Apache-2.0

// Cauchy kernel Gamma(z, w) = (1 - <z, w>)^{-d}, sphere moments of
// monomials, and the approximants
//   Psi_r(f) = int f(zeta) phi(r zeta) dsigma(zeta),  phi(w) = Phi(Gamma(., w)).
//
// With c_a = C(|a|+d-1, d-1) |a|!/a! the kernel is
// sum_a c_a z^a conj(w)^a, and
//   int z^a conj(z)^b dsigma = delta_ab (d-1)! a! / (d-1+|a|)!.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "dalab/error.hpp"
#include "dalab/fockcore/fock.hpp"
#include "dalab/functionals/functionals.hpp"
#include "dalab/multop/sphere.hpp"

namespace dalab {

/// C(|a|+d-1, d-1) |a|!/a!.
Integer cauchy_weight(const MultiIndex& a);

/// int z^a conj(z)^b dsigma over the unit sphere of C^d.
Rational sigma_integral(const MultiIndex& a, const MultiIndex& b);

namespace detail {

inline Rational real_part(const QComplex& z) { return z.re; }
inline double real_part(const cplx& z) { return z.real(); }
inline Rational imag_part(const QComplex& z) { return z.im; }
inline double imag_part(const cplx& z) { return z.imag(); }
inline double as_double(double x) { return x; }
inline double as_double(const Rational& q) { return to_double(q); }

template <class S>
void check_radius(const S& r, bool strict) {
  const auto re = real_part(r);
  if (imag_part(r) != 0 || re < 0 || (strict ? !(re < 1) : re > 1))
    throw InvalidArgument(strict ? "dilation radius must lie in [0, 1)" : "dilation radius must lie in [0, 1]");
}

}  // namespace detail

/// Expansion of Gamma(., zeta) through degree n: coefficient c_a conj(zeta)^a.
template <class S>
Series<S> cauchy_coeffs(std::span<const S> zeta, int n) {
  if (zeta.empty()) throw InvalidArgument("invalid dimension 0");
  if (n < 0) throw InvalidArgument("negative truncation degree");
  S sq{0};
  for (const auto& c : zeta) sq += c * conj_of(c);
  if (detail::real_part(sq) > 1) throw InvalidArgument("Cauchy kernel point must lie in the closed unit ball");
  const int d = static_cast<int>(zeta.size());
  std::vector<S> zbar;
  for (const auto& c : zeta) zbar.push_back(conj_of(c));
  Series<S> out(d, n);
  for (int k = 0; k <= n; ++k)
    for (const auto& a : enum_multiindices(d, k))
      out.add_term(a, from_rational<S>(Rational(cauchy_weight(a))) * Series<S>::monomial_value(a, zbar));
  return out;
}

inline Polynomial cauchy_coeffs(const Point& zeta, int n) { return cauchy_coeffs<cplx>(std::span<const cplx>(zeta), n); }

/// f_r(z) = f(r z), 0 <= r <= 1.
template <class S>
Series<S> dilate(const Series<S>& p, const S& r) {
  detail::check_radius(r, false);
  return p.map_coefficients([&](const MultiIndex& a, const S& c) {
    S v = c;
    for (int k = 0; k < a.degree(); ++k) v *= r;
    return v;
  });
}

inline Polynomial dilate(const Polynomial& p, double r) { return dilate<cplx>(p, cplx{r, 0.0}); }

/// int f(zeta) Gamma(z, zeta) dsigma(zeta), paired term by term.
template <class S>
S cauchy_reproduce(const Series<S>& f, std::span<const S> z) {
  if (static_cast<int>(z.size()) != f.dim()) throw InvalidArgument("point dimension mismatch");
  if (f.is_zero()) return S{0};
  // Gamma(z, zeta) as a series in conj(zeta): coefficient c_a z^a.
  std::vector<S> zbar;
  for (const auto& c : z) zbar.push_back(conj_of(c));
  const Series<S> kernel = cauchy_coeffs<S>(std::span<const S>(zbar), f.degree());
  S total{0};
  for (const auto& [a, c] : f.terms()) total += c * kernel.coeff(a) * from_rational<S>(sigma_integral(a, a));
  return total;
}

template <class S>
struct ValskiiValue {
  S value{};
  double tail_bound = 0.0;
};

/// Psi_r(f) for Phi = [xi eta*], with phi(r .) expanded through degree n.
/// The dropped part of phi only meets f in degrees n < k <= min(deg f, deg
/// eta), each bounded by ||xi|| ||eta|| C(k+d-1, d-1) r^k sum|f_a|; that sum
/// is the reported tail bound and must not exceed tol.
template <class S>
ValskiiValue<S> valskii_approximant(const VectorPairT<S>& phi, const S& r, const Series<S>& f, int n,
                                    double tol = 1e-12);

inline ValskiiValue<cplx> valskii_approximant(const VectorPair& phi, double r, const Polynomial& f, int n,
                                              double tol = 1e-12) {
  return valskii_approximant<cplx>(phi, cplx{r, 0.0}, f, n, tol);
}

struct SigmaCheckRow {
  MultiIndex alpha;
  Rational closed_form;
  double mc_mean = 0.0;
  double mc_stderr = 0.0;
  double z_score = 0.0;
  bool pass = false;
};

struct SigmaValidation {
  int d = 0;
  int max_degree = 0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  double threshold = 3.0;
  std::vector<SigmaCheckRow> rows;
  bool pass = false;
};

inline constexpr std::size_t kDefaultMonteCarloSamples = 10'000'000;

/// Monte Carlo check of the diagonal moments int |z^a|^2 dsigma for
/// |a| <= max_degree. Samples are normalized complex Gaussians drawn in
/// fixed-size chunks, chunk c seeded from (seed, c); partial sums are added
/// in chunk order, so the report does not depend on the thread count.
SigmaValidation validate_sigma_integrals(int d, int max_degree, std::size_t samples = kDefaultMonteCarloSamples,
                                         std::uint64_t seed = kDefaultSeed, double threshold = 3.0);

nlohmann::json to_json(const SigmaValidation& v);

// ---- template definitions

template <class S>
ValskiiValue<S> valskii_approximant(const VectorPairT<S>& phi, const S& r, const Series<S>& f, int n, double tol) {
  detail::check_radius(r, true);
  if (n < 0) throw InvalidArgument("negative truncation degree");
  if (f.dim() != phi.xi.dim() || phi.xi.dim() != phi.eta.dim()) throw InvalidArgument("valskii dimension mismatch");
  const int d = f.dim();
  ValskiiValue<S> out;

  double tail = 0.0;
  const int top = std::min(f.degree(), phi.eta.degree());
  if (top > n) {
    double fsum = 0.0, xi_sq = 0.0, eta_sq = 0.0;
    for (const auto& [a, c] : f.terms()) fsum += std::sqrt(std::abs(detail::as_double(detail::real_part(c * conj_of(c)))));
    xi_sq = std::abs(detail::as_double(detail::real_part(inner_product(phi.xi, phi.xi))));
    eta_sq = std::abs(detail::as_double(detail::real_part(inner_product(phi.eta, phi.eta))));
    const double rr = std::abs(detail::as_double(detail::real_part(r)));
    for (int k = n + 1; k <= top; ++k)
      tail += binomial_double(static_cast<unsigned>(k + d - 1), static_cast<unsigned>(d - 1)) * std::pow(rr, k);
    tail *= std::sqrt(xi_sq * eta_sq) * fsum;
  }
  out.tail_bound = tail;
  if (tail > tol)
    throw NumericalFailure("Cauchy expansion tail bound " + std::to_string(tail) + " exceeds tolerance");

  // phi(r zeta) = sum_a c_a r^|a| Phi(z^a) conj(zeta)^a, then integrate
  // against f with the sphere moments.
  S total{0};
  for (const auto& [a, fa] : f.terms()) {
    if (a.degree() > n) continue;
    const S phi_a = eval_functional(phi, Series<S>::monomial(a));
    if (is_zero_scalar(phi_a)) continue;
    S ra{1};
    for (int k = 0; k < a.degree(); ++k) ra *= r;
    const S coeff = from_rational<S>(Rational(cauchy_weight(a))) * ra * phi_a;
    total += fa * coeff * from_rational<S>(sigma_integral(a, a));
  }
  out.value = total;
  return out;
}

}  // namespace dalab
