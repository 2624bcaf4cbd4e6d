// Copyright 2026 The dalab Authors
// SPDX-License-Identifier: Apache-2.0

#include "dalab/functionals/functionals.hpp"

#include <algorithm>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "dalab/fockcore/poly_io.hpp"
#include "dalab/json_format.hpp"
#include "dalab/multop/norms.hpp"
#include "dalab/peaklab/peaklab.hpp"
#include "dalab/shiftlab/shiftlab.hpp"

namespace dalab {

namespace {

Polynomial axis_power(int d, int n) {
  std::vector<int> e(static_cast<std::size_t>(d), 0);
  e[0] = n;
  return Polynomial::monomial(MultiIndex(std::move(e)));
}

struct Candidate {
  Polynomial p;
  double bound;
  std::string name;
};

std::vector<Candidate> candidates(int d, const std::vector<Atom>& atoms, const CandidateOptions& opt) {
  std::vector<Candidate> out;
  for (int k = 0; k <= opt.monomial_degree; ++k)
    for (const auto& a : enum_multiindices(d, k))
      // sup of the weights ||z^(b+a)|| / ||z^b|| is attained at b = 0.
      out.push_back({Polynomial::monomial(a), std::sqrt(to_double(monomial_norm_sq(a))), "z^" + a.to_string()});
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const Eigen::MatrixXcd u = unitary_to(atoms[i].zeta);
    for (int n = 1; n <= opt.rotated_power; ++n)
      out.push_back({rotation_pullback(u, axis_power(d, n)), 1.0,
                     "rotated z1^" + std::to_string(n) + " at atom " + std::to_string(i)});
    if (opt.peak_terms > 0)
      out.push_back({peak_polynomial(PeakSpec::point(atoms[i].zeta, opt.peak_terms)), 1.0,
                     "peak at atom " + std::to_string(i)});
  }
  if (d == 2)
    for (int n = 1; n <= opt.circle_means; ++n)
      out.push_back({circle_peak(n), cesaro_operator_norm(n).norm, "h_" + std::to_string(n)});
  return out;
}

nlohmann::json cplx_json(cplx c) { return nlohmann::json::array({c.real(), c.imag()}); }

cplx cplx_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2) throw ParseError("complex value must be [re, im]");
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

}  // namespace

int dim(const Functional& phi) {
  if (const auto* v = std::get_if<VectorPair>(&phi)) return v->xi.dim();
  return std::get<AtomicMeasure>(phi).d;
}

void validate(const Functional& phi) {
  if (const auto* v = std::get_if<VectorPair>(&phi)) {
    if (v->xi.dim() != v->eta.dim()) throw InvalidArgument("vector pair dimensions differ");
    return;
  }
  const auto& m = std::get<AtomicMeasure>(phi);
  if (m.d < 1) throw InvalidArgument("invalid dimension " + std::to_string(m.d));
  for (const auto& a : m.atoms) {
    if (static_cast<int>(a.zeta.size()) != m.d) throw InvalidArgument("atom dimension differs from d");
    if (std::abs(euclidean_norm(a.zeta) - 1.0) > 1e-12) throw InvalidArgument("atom point must have unit norm");
  }
}

cplx eval_functional(const AtomicMeasure& phi, const Polynomial& p) {
  validate(Functional{phi});
  if (p.dim() != phi.d) throw InvalidArgument("functional and polynomial dimensions differ");
  cplx total{0.0, 0.0};
  for (const auto& a : phi.atoms) total += a.lambda * p.evaluate(a.zeta);
  return total;
}

cplx eval_functional(const Functional& phi, const Polynomial& p) {
  if (const auto* v = std::get_if<VectorPair>(&phi)) return eval_functional(*v, p);
  return eval_functional(std::get<AtomicMeasure>(phi), p);
}

NormBounds functional_norm_bounds(const Functional& phi, const CandidateOptions& opt) {
  validate(phi);
  NormBounds b;
  std::vector<Atom> atoms;
  if (const auto* v = std::get_if<VectorPair>(&phi)) {
    b.upper = norm(v->xi) * norm(v->eta);
  } else {
    atoms = std::get<AtomicMeasure>(phi).atoms;
    for (const auto& a : atoms) b.upper += std::abs(a.lambda);
  }
  if (b.upper == 0.0) return b;
  for (const auto& c : candidates(dim(phi), atoms, opt)) {
    double v = 0.0;
    try {
      v = std::abs(eval_functional(phi, c.p)) / c.bound;
    } catch (const TruncationOverflow&) {
      continue;  // candidate leaves the trusted range of eta
    }
    if (v > b.lower) {
      b.lower = v;
      b.witness = c.name;
    }
  }
  return b;
}

std::vector<WitnessRow> singular_witness(const AtomicMeasure& phi, int n_max, double tol) {
  validate(Functional{phi});
  if (phi.atoms.size() != 1) throw InvalidArgument("singular_witness is constructed for a single atom only");
  if (n_max < 1) throw InvalidArgument("singular_witness needs n_max >= 1");
  const Atom& atom = phi.atoms.front();
  const Eigen::MatrixXcd u = unitary_to(atom.zeta);
  std::vector<WitnessRow> rows;
  for (int n = 1; n <= n_max; ++n) {
    const Polynomial f = rotation_pullback(u, axis_power(phi.d, n));
    rows.push_back({n, multiplier_norm(f, n, tol).value, std::abs(eval_functional(phi, f))});
  }
  return rows;
}

DecayTable henkin_decay(const VectorPair& phi, const Point& zeta, int n_max) {
  if (n_max < 1) throw InvalidArgument("henkin_decay needs n_max >= 1");
  if (static_cast<int>(zeta.size()) != phi.xi.dim()) throw InvalidArgument("witness point dimension mismatch");
  const Eigen::MatrixXcd u = unitary_to(zeta);
  std::vector<Polynomial> family;
  for (int n = 0; n <= n_max; ++n) family.push_back(rotation_pullback(u, axis_power(phi.xi.dim(), n)));
  return henkin_decay_impl(phi, family);
}

VectorPair kernel_pair(const Point& w, int n1, int n_max) {
  if (n1 < 0 || n_max < 0) throw InvalidArgument("negative kernel truncation");
  return {kernel_vector<cplx>(std::span<const cplx>(w), n1), kernel_vector<cplx>(std::span<const cplx>(w), n1 + n_max)};
}

ExtremalResult extremal_subspace(const Polynomial& f, int n, double tol, const SphereSampling& samples) {
  if (!(tol > 0.0)) throw InvalidArgument("extremal_subspace tolerance must be positive");
  if (n < 0) throw InvalidArgument("negative truncation degree");
  ExtremalResult r;
  r.truncation = n;
  const BlockOperator t = mult_matrix(f, n);
  if (t.cols() > 2000) throw InvalidArgument("extremal_subspace truncation exceeds 2000 basis elements");
  const Eigen::MatrixXcd m = t.to_dense();
  const Eigen::MatrixXcd g = m.adjoint() * m;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g);
  if (es.info() != Eigen::Success) throw NumericalFailure("dense eigensolver failed");
  const Eigen::VectorXd& ev = es.eigenvalues();  // ascending
  const Eigen::Index size = ev.size();
  r.top = ev(size - 1);
  r.gap = size > 1 ? ev(size - 1) - ev(size - 2) : 0.0;
  for (Eigen::Index i = size - 1; i >= std::max<Eigen::Index>(0, size - 8); --i) r.eigenvalues.push_back(ev(i));

  const GradedBasis basis(f.dim(), n);
  struct Picked {
    double value;
    std::size_t lead;
    FockVector v;
  };
  std::vector<Picked> picked;
  for (Eigen::Index i = size - 1; i >= 0 && ev(i) > 1.0 - 10.0 * tol; --i) {
    Eigen::VectorXcd col = es.eigenvectors().col(i);
    const double amax = col.cwiseAbs().maxCoeff();
    Eigen::Index lead = 0;
    while (std::abs(col(lead)) < amax * (1.0 - 1e-12)) ++lead;
    col *= std::conj(col(lead)) / std::abs(col(lead));
    FockVector v(f.dim(), n);
    for (Eigen::Index k = 0; k < col.size(); ++k) {
      // coordinate against z^b / ||z^b|| -> monomial coefficient
      const MultiIndex& b = basis.index(static_cast<std::size_t>(k));
      const cplx c = col(k) / std::sqrt(monomial_norm_sq_double(b));
      if (std::abs(col(k)) > 1e-14) v.add_term(b, c);
    }
    picked.push_back({ev(i), static_cast<std::size_t>(lead), std::move(v)});
  }
  std::stable_sort(picked.begin(), picked.end(), [](const Picked& a, const Picked& b) {
    return a.value != b.value ? a.value > b.value : a.lead < b.lead;
  });
  for (auto& p : picked) r.vectors.push_back(std::move(p.v));
  r.dim_estimate = static_cast<int>(r.vectors.size());

  r.sup_estimate = sup_norm(f, samples);
  if (r.sup_estimate >= 1.0 - tol) {
    r.status = ExtremalStatus::degenerate;
    r.note = "sup norm reaches 1; the extremal subspace need not be finite dimensional";
  } else if (r.vectors.empty()) {
    r.status = ExtremalStatus::inconclusive;
    r.note = "no eigenvalue within 10 tol of 1 at this truncation";
  } else if (r.top > 1.0 + 10.0 * tol) {
    r.status = ExtremalStatus::inconclusive;
    r.note = "multiplier norm exceeds 1; normalize f first";
  }
  return r;
}

VectorPair exposed_functional(const Polynomial& f, const FockVector& xi, double tol) {
  if (f.dim() != xi.dim()) throw InvalidArgument("exposed_functional dimension mismatch");
  if (f.truncation()) throw TruncationOverflow("exposed_functional needs a polynomial f, not a truncated series");
  if (std::abs(norm(xi) - 1.0) > tol) throw InvalidArgument("exposed_functional needs a unit vector xi");
  const int xi_bound = xi.truncation() ? *xi.truncation() : std::max(xi.degree(), 0);
  if (xi.degree() > xi_bound) throw TruncationOverflow("xi exceeds its own degree bound");
  const Polynomial eta = f * xi.without_truncation();
  return {xi, eta.truncated(xi_bound + std::max(f.degree(), 0))};
}

nlohmann::json functional_to_json(const Functional& phi) {
  if (const auto* v = std::get_if<VectorPair>(&phi))
    return {{"kind", "vector"}, {"xi", polynomial_to_json(v->xi)}, {"eta", polynomial_to_json(v->eta)}};
  const auto& m = std::get<AtomicMeasure>(phi);
  nlohmann::json atoms = nlohmann::json::array();
  for (const auto& a : m.atoms) {
    nlohmann::json z = nlohmann::json::array();
    for (const auto& c : a.zeta) z.push_back(cplx_json(c));
    atoms.push_back({{"lambda", cplx_json(a.lambda)}, {"zeta", z}});
  }
  return {{"kind", "atomic"}, {"d", m.d}, {"atoms", atoms}};
}

Functional functional_from_json(const nlohmann::json& j) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "vector") {
      VectorPair v{polynomial_from_json(j.at("xi")), polynomial_from_json(j.at("eta"))};
      Functional phi{std::move(v)};
      validate(phi);
      return phi;
    }
    if (kind != "atomic") throw ParseError("unknown functional kind '" + kind + "'");
    AtomicMeasure m;
    m.d = j.contains("d") ? j.at("d").get<int>() : -1;
    for (const auto& a : j.at("atoms")) {
      Atom atom;
      atom.lambda = cplx_from_json(a.at("lambda"));
      for (const auto& c : a.at("zeta")) atom.zeta.push_back(cplx_from_json(c));
      if (m.d < 0) m.d = static_cast<int>(atom.zeta.size());
      m.atoms.push_back(std::move(atom));
    }
    if (m.d < 0) throw ParseError("atomic functional without atoms needs \"d\"");
    Functional phi{std::move(m)};
    validate(phi);
    return phi;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(std::string("invalid functional JSON: ") + e.what());
  }
}

nlohmann::json to_json(const NormBounds& b) {
  return {{"lower", b.lower}, {"upper", b.upper}, {"witness", b.witness}};
}

nlohmann::json to_json(const std::vector<WitnessRow>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rows) out.push_back({{"n", r.n}, {"mult_norm", r.mult_norm}, {"value_abs", r.value_abs}});
  return {{"rows", out}};
}

nlohmann::json to_json(const DecayTable& t) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : t.rows)
    out.push_back({{"n", r.n}, {"value", cplx_json(r.value)}, {"value_abs", r.value_abs}, {"ratio", r.ratio}});
  return {{"rows", out}, {"tail_max", t.tail_max}};
}

nlohmann::json to_json(const ExtremalResult& r) {
  nlohmann::json vecs = nlohmann::json::array();
  for (const auto& v : r.vectors) vecs.push_back(polynomial_to_json(v));
  return {{"truncation", r.truncation}, {"status", to_string(r.status)},  {"note", r.note},
          {"top", r.top},               {"gap", r.gap},                   {"eigenvalues", r.eigenvalues},
          {"vectors", vecs},            {"dim_estimate", r.dim_estimate}, {"sup_estimate", r.sup_estimate}};
}

std::string to_csv(const std::vector<WitnessRow>& rows) {
  std::ostringstream os;
  os << "n,mult_norm,value_abs\n";
  for (const auto& r : rows) os << r.n << ',' << format_float(r.mult_norm) << ',' << format_float(r.value_abs) << '\n';
  return os.str();
}

std::string to_csv(const DecayTable& t) {
  std::ostringstream os;
  os << "n,re,im,abs,ratio\n";
  for (const auto& r : t.rows)
    os << r.n << ',' << format_float(r.value.real()) << ',' << format_float(r.value.imag()) << ','
       << format_float(r.value_abs) << ',' << (std::isnan(r.ratio) ? std::string() : format_float(r.ratio)) << '\n';
  return os.str();
}

const char* to_string(ExtremalStatus s) {
  switch (s) {
    case ExtremalStatus::ok:
      return "ok";
    case ExtremalStatus::inconclusive:
      return "inconclusive";
    case ExtremalStatus::degenerate:
      return "degenerate";
  }
  return "unknown";
}

}  // namespace dalab
