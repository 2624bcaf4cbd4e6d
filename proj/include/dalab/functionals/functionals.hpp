// Copyright 2026 The dalab Authors
// SPDX-License-Identifier: Apache-2.0

// Concrete functionals on the polynomial multipliers: vector pairs
// p -> <M_p xi, eta> and finite atomic measures p -> sum lambda_i p(zeta_i),
// with norm brackets, peaking and decay certificates, and the extremal
// subspace {xi : ||f xi|| = ||xi||} of a norm-one multiplier.

#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "json.hpp"

#include "dalab/error.hpp"
#include "dalab/fockcore/fock.hpp"
#include "dalab/multop/sphere.hpp"

namespace dalab {

template <class S>
struct VectorPairT {
  Series<S> xi;
  Series<S> eta;
};

using VectorPair = VectorPairT<cplx>;
using ExactVectorPair = VectorPairT<QComplex>;

struct Atom {
  cplx lambda;
  Point zeta;
};

struct AtomicMeasure {
  int d = 0;
  std::vector<Atom> atoms;
};

using Functional = std::variant<VectorPair, AtomicMeasure>;

int dim(const Functional& phi);

/// Checks dimensions and unit-norm atoms (1e-12).
void validate(const Functional& phi);

/// <M_p xi, eta>. Coefficients absent from xi and eta are zero; the degree
/// bound of eta is where the pairing is trusted, so deg p + deg xi must not
/// exceed it (TruncationOverflow otherwise).
template <class S>
S eval_functional(const VectorPairT<S>& phi, const Series<S>& p) {
  if (phi.xi.dim() != phi.eta.dim() || p.dim() != phi.xi.dim())
    throw InvalidArgument("functional and polynomial dimensions differ");
  if (p.is_zero() || phi.xi.is_zero() || phi.eta.is_zero()) return S{0};
  const int need = p.degree() + phi.xi.degree();
  if (phi.eta.truncation() && need > *phi.eta.truncation())
    throw TruncationOverflow("deg p + deg xi = " + std::to_string(need) + " exceeds the eta bound " +
                             std::to_string(*phi.eta.truncation()));
  return inner_product(p.without_truncation() * phi.xi.without_truncation(), phi.eta.without_truncation());
}

cplx eval_functional(const AtomicMeasure& phi, const Polynomial& p);
cplx eval_functional(const Functional& phi, const Polynomial& p);

struct NormBounds {
  double lower = 0.0;
  double upper = 0.0;
  std::string witness;  // description of the candidate attaining `lower`
};

struct CandidateOptions {
  int monomial_degree = 4;  // normalized monomials up to this degree
  int rotated_power = 8;    // <z, zeta_i>^n for n <= rotated_power at each atom
  int peak_terms = 8;       // point peak polynomial at each atom
  int circle_means = 4;     // h_1..h_k when d = 2
};

/// upper = ||xi|| ||eta|| (vector pair) or sum |lambda_i| (atomic).
/// lower = max |Phi(p)| / bound(p) over a candidate family, where bound(p)
/// is an upper bound for ||p||_M: exact for monomials (rotations included),
/// 1 for the point peaks, the converged restricted norm for h_n.
NormBounds functional_norm_bounds(const Functional& phi, const CandidateOptions& opt = {});

struct WitnessRow {
  int n = 0;
  double mult_norm = 0.0;
  double value_abs = 0.0;
};

/// f_n = (z_1^n) pulled back along unitary_to(zeta) for the single atom
/// lambda delta_zeta; rows (n, ||f_n||_M, |Phi(f_n)|) for n = 1..n_max.
std::vector<WitnessRow> singular_witness(const AtomicMeasure& phi, int n_max, double tol = 1e-9);

struct DecayRow {
  int n = 0;
  cplx value;
  double value_abs = 0.0;
  double ratio = 0.0;  // |Phi(f_n)| / |Phi(f_{n-1})|, NaN when undefined
};

struct DecayTable {
  std::vector<DecayRow> rows;
  double tail_max = 0.0;  // max |Phi(f_n)| over n > n_max / 2
};

/// Phi(f_n) for the rotated monomials f_n = z_1^n o U*, U = unitary_to(zeta),
/// n = 0..n_max.
template <class S>
DecayTable henkin_decay_impl(const VectorPairT<S>& phi, const std::vector<Series<S>>& family);

DecayTable henkin_decay(const VectorPair& phi, const Point& zeta, int n_max);

/// [k_w^{n1}, (k_w^{n1 + n_max})*]: the evaluation at w, made exact on every
/// z_1^n with n <= n_max.
VectorPair kernel_pair(const Point& w, int n1, int n_max);

enum class ExtremalStatus { ok, inconclusive, degenerate };

struct ExtremalResult {
  int truncation = 0;
  ExtremalStatus status = ExtremalStatus::ok;
  std::string note;
  double top = 0.0;  // largest eigenvalue of the truncated M_f* M_f
  double gap = 0.0;  // top minus the next eigenvalue (0 if none)
  std::vector<double> eigenvalues;  // descending, at most 8
  std::vector<FockVector> vectors;  // eigenvalue > 1 - 10 tol
  int dim_estimate = 0;
  double sup_estimate = 0.0;
};

/// Dense eigendecomposition of M_f* M_f on degrees <= n. Eigenvectors are
/// returned as FockVectors in monomial coefficients, phase-fixed so their
/// first largest coefficient (graded-lex) is real positive.
ExtremalResult extremal_subspace(const Polynomial& f, int n, double tol = 1e-9, const SphereSampling& samples = {});

/// [xi (f xi)*]; its value at f is ||f xi||^2.
VectorPair exposed_functional(const Polynomial& f, const FockVector& xi, double tol = 1e-9);

nlohmann::json functional_to_json(const Functional& phi);
Functional functional_from_json(const nlohmann::json& j);

nlohmann::json to_json(const NormBounds& b);
nlohmann::json to_json(const std::vector<WitnessRow>& rows);
nlohmann::json to_json(const DecayTable& t);
nlohmann::json to_json(const ExtremalResult& r);
std::string to_csv(const std::vector<WitnessRow>& rows);
std::string to_csv(const DecayTable& t);
const char* to_string(ExtremalStatus s);

// ---- template definitions

template <class S>
DecayTable henkin_decay_impl(const VectorPairT<S>& phi, const std::vector<Series<S>>& family) {
  DecayTable t;
  double prev = 0.0;
  const int n_max = static_cast<int>(family.size()) - 1;
  for (int n = 0; n <= n_max; ++n) {
    DecayRow r;
    r.n = n;
    const S v = eval_functional(phi, family[static_cast<std::size_t>(n)]);
    if constexpr (std::is_same_v<S, cplx>) {
      r.value = v;
    } else {
      r.value = v.to_cplx();
    }
    r.value_abs = std::abs(r.value);
    r.ratio = (n > 0 && prev > 0.0) ? r.value_abs / prev : std::numeric_limits<double>::quiet_NaN();
    prev = r.value_abs;
    if (2 * n > n_max) t.tail_max = std::max(t.tail_max, r.value_abs);
    t.rows.push_back(r);
  }
  return t;
}

}  // namespace dalab
