// Copyright 2026 The dalab Authors
// SPDX-License-Identifier: Apache-2.0

#include "dalab/peaklab/peaklab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "dalab/error.hpp"
#include "dalab/json_format.hpp"
#include "dalab/shiftlab/shiftlab.hpp"

namespace dalab {

namespace {

nlohmann::json point_json(const Point& z) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& c : z) out.push_back({c.real(), c.imag()});
  return out;
}

nlohmann::json cplx_json(cplx c) { return nlohmann::json::array({c.real(), c.imag()}); }

}  // namespace

Polynomial rotation_pullback(const Eigen::MatrixXcd& u, const Polynomial& p) {
  const int d = p.dim();
  if (u.rows() != d || u.cols() != d) throw InvalidArgument("rotation matrix size differs from dimension");
  const Eigen::MatrixXcd defect = u.adjoint() * u - Eigen::MatrixXcd::Identity(d, d);
  if (defect.cwiseAbs().maxCoeff() > 1e-10) throw InvalidArgument("rotation matrix is not unitary");

  // (U* z)_k = sum_j conj(u_jk) z_j
  std::vector<Polynomial> linear;
  for (int k = 0; k < d; ++k) {
    Polynomial l(d);
    for (int j = 0; j < d; ++j) l.add_term(MultiIndex::unit(d, j), std::conj(u(j, k)));
    linear.push_back(std::move(l));
  }
  std::vector<std::vector<Polynomial>> powers(static_cast<std::size_t>(d));
  auto power = [&](int k, int e) -> const Polynomial& {
    auto& cache = powers[static_cast<std::size_t>(k)];
    if (cache.empty()) cache.push_back(Polynomial::constant(d, cplx{1.0, 0.0}));
    while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * linear[static_cast<std::size_t>(k)]);
    return cache[static_cast<std::size_t>(e)];
  };

  Polynomial out(d);
  for (const auto& [a, c] : p.terms()) {
    Polynomial term = Polynomial::constant(d, c);
    for (int k = 0; k < d; ++k)
      if (a[k] > 0) term = term * power(k, a[k]);
    out += term;
  }
  return out;
}

Eigen::MatrixXcd unitary_to(const Point& zeta0) {
  const int d = static_cast<int>(zeta0.size());
  if (d < 1) throw InvalidArgument("invalid dimension 0");
  if (std::abs(euclidean_norm(zeta0) - 1.0) > 1e-12) throw InvalidArgument("rotation target must have unit norm");
  const double phi = zeta0[0] == cplx{0.0, 0.0} ? 0.0 : std::arg(zeta0[0]);
  const cplx phase = std::polar(1.0, phi);
  Eigen::VectorXcd v(d);
  for (int j = 1; j < d; ++j) v(j) = -zeta0[static_cast<std::size_t>(j)];
  // phase - zeta0[0] written so that it vanishes exactly on the axis.
  v(0) = phase * (1.0 - std::abs(zeta0[0]));
  Eigen::MatrixXcd diag = Eigen::MatrixXcd::Identity(d, d);
  diag(0, 0) = phase;
  const double vn = v.squaredNorm();
  if (vn == 0.0) return diag;
  const Eigen::MatrixXcd h = Eigen::MatrixXcd::Identity(d, d) - (2.0 / vn) * (v * v.adjoint());
  return h * diag;
}

PeakSpec PeakSpec::point(Point zeta, int terms) {
  PeakSpec s{PointTarget{std::move(zeta)}, terms};
  s.validate();
  return s;
}

PeakSpec PeakSpec::circle() { return PeakSpec{BalancedCircle{}, kDefaultPeakTerms}; }

int PeakSpec::dim() const {
  if (const auto* p = std::get_if<PointTarget>(&target)) return static_cast<int>(p->zeta.size());
  return 2;
}

double PeakSpec::tail_bound() const { return std::ldexp(1.0, -terms); }

void PeakSpec::validate() const {
  if (terms < 1) throw InvalidArgument("peak series needs M >= 1");
  if (const auto* p = std::get_if<PointTarget>(&target)) {
    if (p->zeta.empty()) throw InvalidArgument("invalid dimension 0");
    if (std::abs(euclidean_norm(p->zeta) - 1.0) > 1e-12) throw InvalidArgument("peak target must have unit norm");
  }
}

double target_distance(const PeakSpec& spec, const Point& z) {
  if (const auto* p = std::get_if<PointTarget>(&spec.target)) {
    if (z.size() != p->zeta.size()) throw InvalidArgument("point dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) s += std::norm(z[i] - p->zeta[i]);
    return std::sqrt(s);
  }
  if (z.size() != 2) throw InvalidArgument("balanced circle lives in C^2");
  // min over |w| = 1/sqrt2 of |z - (w, conj w)|^2 = |z|^2 + 1 - sqrt2 |z1 + conj z2|.
  const double sq = std::norm(z[0]) + std::norm(z[1]) + 1.0 - std::numbers::sqrt2 * std::abs(z[0] + std::conj(z[1]));
  return std::sqrt(std::max(sq, 0.0));
}

ExactSeries axis_peak_polynomial(int d, int terms) {
  if (terms < 1) throw InvalidArgument("peak series needs M >= 1");
  // 2^-n f^n = 4^-n (1 + z1)^n, so the z1^j coefficient is sum_{n} 4^-n C(n, j).
  ExactSeries g(d);
  for (int j = 0; j <= terms; ++j) {
    Rational c = 0;
    for (int n = std::max(j, 1); n <= terms; ++n)
      c += Rational(binomial(static_cast<unsigned>(n), static_cast<unsigned>(j)), Integer(1) << (2 * n));
    std::vector<int> e(static_cast<std::size_t>(d), 0);
    e[0] = j;
    g.add_term(MultiIndex(std::move(e)), QComplex{c});
  }
  return g;
}

Polynomial peak_polynomial(const PeakSpec& spec) {
  spec.validate();
  const auto* p = std::get_if<PointTarget>(&spec.target);
  if (!p) throw InvalidArgument("peak_polynomial needs a point target");
  const int d = static_cast<int>(p->zeta.size());
  return rotation_pullback(unitary_to(p->zeta), to_float(axis_peak_polynomial(d, spec.terms)));
}

ExactSeries exact_peak_polynomial(std::span<const QComplex> zeta0, int terms) {
  if (terms < 1) throw InvalidArgument("peak series needs M >= 1");
  if (zeta0.empty()) throw InvalidArgument("invalid dimension 0");
  const int d = static_cast<int>(zeta0.size());
  Rational sq = 0;
  for (const auto& c : zeta0) sq += c.norm();
  if (sq != 1) throw InvalidArgument("exact peak target must have norm exactly 1");
  const QComplex half{Rational(1, 2)};
  ExactSeries f = ExactSeries::constant(d, half);
  for (int j = 0; j < d; ++j) f += ExactSeries::coordinate(d, j) * (conj_of(zeta0[static_cast<std::size_t>(j)]) * half);
  // Each step multiplies by f/2.
  const ExactSeries step = f * half;
  ExactSeries power = step, g = step;
  for (int n = 2; n <= terms; ++n) {
    power = power * step;
    g += power;
  }
  return g;
}

Polynomial circle_peak(int n) { return cesaro_polynomial(n); }

PeakReport peak_verify(const Polynomial& p, const PeakSpec& spec, const PeakGrid& grid) {
  spec.validate();
  if (p.dim() != spec.dim()) throw InvalidArgument("polynomial dimension differs from target");
  if (grid.exclusion_radius < 0.0) throw InvalidArgument("negative exclusion radius");
  PeakReport r;
  r.exclusion_radius = grid.exclusion_radius;
  if (const auto* t = std::get_if<PointTarget>(&spec.target)) {
    r.value_on_target = p.evaluate(t->zeta);
  } else {
    const Point on_t{cplx{std::numbers::sqrt2 / 2, 0.0}, cplx{std::numbers::sqrt2 / 2, 0.0}};
    r.value_on_target = p.evaluate(on_t);
  }

  const auto pts = sphere_grid(p.dim(), grid.n_points, grid.seed);
  const long npts = static_cast<long>(pts.size());
  std::vector<double> vals(pts.size(), -1.0);
#pragma omp parallel for schedule(static)
  for (long i = 0; i < npts; ++i) {
    const auto& z = pts[static_cast<std::size_t>(i)];
    if (target_distance(spec, z) >= grid.exclusion_radius) vals[static_cast<std::size_t>(i)] = std::abs(p.evaluate(z));
  }
  std::size_t best = pts.size();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (vals[i] < 0.0) continue;
    ++r.grid_size;
    if (best == pts.size() || vals[i] > vals[best]) best = i;
  }
  if (r.grid_size == 0) throw InvalidArgument("exclusion cap removes every grid point");
  r.max_off_target = vals[best];
  r.argmax = pts[best];
  r.margin = 1.0 - r.max_off_target;
  if (grid.attach_norm) {
    const int n_max = grid.norm_n_max < 0 ? std::max(p.degree(), 0) : grid.norm_n_max;
    r.mult_norm = multiplier_norm(p, n_max, grid.tol);
  }
  return r;
}

std::string peak_grid_csv(const Polynomial& p, const PeakSpec& spec, const PeakGrid& grid) {
  spec.validate();
  std::ostringstream os;
  const int d = p.dim();
  for (int j = 1; j <= d; ++j) os << "re" << j << ",im" << j << ',';
  os << "abs,excluded\n";
  for (const auto& z : sphere_grid(d, grid.n_points, grid.seed)) {
    for (const auto& c : z) os << format_float(c.real()) << ',' << format_float(c.imag()) << ',';
    const bool excluded = target_distance(spec, z) < grid.exclusion_radius;
    os << format_float(std::abs(p.evaluate(z))) << ',' << (excluded ? 1 : 0) << '\n';
  }
  return os.str();
}

namespace {

// Restricted norm at deg + slack, with the plateau flag taken against one
// degree lower.
std::pair<double, bool> truncated_norm(const Polynomial& p, const SupKOptions& opt) {
  const int n = std::max(p.degree(), 0) + opt.slack;
  const double hi = op_norm(mult_matrix(p, n), opt.tol);
  const double lo = op_norm(mult_matrix(p, n - 1), opt.tol);
  return {hi, std::abs(hi - lo) < opt.tol * std::max(hi, 1e-300)};
}

}  // namespace

SupKTable supnorm_on_K_powers(const Polynomial& g, const Polynomial& f, const Point& k_point, int n_max,
                              const SupKOptions& opt) {
  if (n_max < 1) throw InvalidArgument("supnorm_on_K_powers needs n_max >= 1");
  if (g.dim() != f.dim() || static_cast<int>(k_point.size()) != g.dim())
    throw InvalidArgument("dimension mismatch in supnorm_on_K_powers");
  if (opt.slack < 1) throw InvalidArgument("supnorm_on_K_powers needs slack >= 1");
  SupKTable t;
  t.target = std::abs(g.evaluate(k_point));

  std::vector<int> ns;
  for (int n = 1; n < n_max; n *= 2) ns.push_back(n);
  ns.push_back(n_max);

  std::vector<Polynomial> fpow{Polynomial::constant(f.dim(), cplx{1.0, 0.0})};
  Polynomial partial(f.dim());
  int have = 0;
  double best = std::numeric_limits<double>::infinity();
  for (int n : ns) {
    while (have < n) {
      fpow.push_back(fpow.back() * f);
      partial += fpow.back();
      ++have;
    }
    SupKRow row;
    row.n = n;
    const auto [c, c_conv] = truncated_norm(g * (partial * cplx{1.0 / n, 0.0}), opt);
    const auto [pw, p_conv] = truncated_norm(g * fpow.back(), opt);
    row.cesaro = c;
    row.power = pw;
    best = std::min({best, c, pw});
    row.best = best;
    row.converged = c_conv && p_conv;
    t.rows.push_back(row);
  }
  return t;
}

nlohmann::json to_json(const PeakReport& r) {
  nlohmann::json j{{"value_on_target", cplx_json(r.value_on_target)},
                   {"max_off_target", r.max_off_target},
                   {"margin", r.margin},
                   {"argmax", point_json(r.argmax)},
                   {"grid_size", r.grid_size},
                   {"exclusion_radius", r.exclusion_radius}};
  j["mult_norm"] = r.mult_norm ? to_json(*r.mult_norm) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json to_json(const SupKTable& t) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : t.rows)
    rows.push_back(
        {{"n", r.n}, {"cesaro", r.cesaro}, {"power", r.power}, {"best", r.best}, {"converged", r.converged}});
  return {{"target", t.target}, {"rows", rows}};
}

std::string to_csv(const SupKTable& t) {
  std::ostringstream os;
  os << "n,cesaro,power,best,converged\n";
  for (const auto& r : t.rows)
    os << r.n << ',' << format_float(r.cesaro) << ',' << format_float(r.power) << ',' << format_float(r.best) << ','
       << (r.converged ? "true" : "false") << '\n';
  return os.str();
}

}  // namespace dalab
