// Copyright 2026 The dalab Authors
// SPDX-License-Identifier: Apache-2.0

#include "doctest.h"

#include <cmath>
#include <numbers>

#include "dalab/fockcore/poly_io.hpp"
#include "dalab/peaklab/peaklab.hpp"
#include "support/generators.hpp"

using namespace dalab;
using dalab::testing::Gen;

namespace {

Polynomial P(const char* text, int d) { return parse_polynomial(text, d); }

Point circle_point(double theta) {
  const double s = 1.0 / std::sqrt(2.0);
  return {std::polar(s, theta), std::polar(s, -theta)};
}

}  // namespace

TEST_CASE("rotation_pullback examples") {
  Eigen::MatrixXcd swap(2, 2);
  swap << 0, 1, 1, 0;
  CHECK(rotation_pullback(swap, P("z1", 2)) == P("z2", 2));

  const double th = 0.7;
  Eigen::MatrixXcd diag = Eigen::MatrixXcd::Identity(2, 2);
  diag(0, 0) = std::polar(1.0, th);
  const Polynomial r = rotation_pullback(diag, P("z1^2", 2));
  CHECK(r.size() == 1);
  CHECK(std::abs(r.coeff(MultiIndex({2, 0})) - std::polar(1.0, -2.0 * th)) < 1e-15);

  Gen g(31);
  CHECK(rotation_pullback(g.unitary(3), P("1", 3)) == P("1", 3));

  Eigen::MatrixXcd bad = Eigen::MatrixXcd::Identity(2, 2);
  bad(0, 1) = 1e-6;
  CHECK_THROWS_AS(rotation_pullback(bad, P("z1", 2)), InvalidArgument);
}

TEST_CASE("rotation_pullback evaluates as p(U* z)") {
  Gen g(32);
  for (int t = 0; t < 15; ++t) {
    const int d = g.uniform_int(1, 3);
    const Eigen::MatrixXcd u = g.unitary(d);
    const Polynomial p = g.sparse_polynomial(d, 5);
    const Polynomial q = rotation_pullback(u, p);
    CHECK(q.degree() == p.degree());
    for (int s = 0; s < 5; ++s) {
      const Point z = g.ball_point(d);
      Eigen::VectorXcd zv(d);
      for (int i = 0; i < d; ++i) zv(i) = z[static_cast<std::size_t>(i)];
      const Eigen::VectorXcd w = u.adjoint() * zv;
      const Point wp(w.data(), w.data() + d);
      CHECK(std::abs(q.evaluate(z) - p.evaluate(wp)) < 1e-11);
    }
  }
}

TEST_CASE("unitary_to sends e1 to the target") {
  Gen g(33);
  for (int t = 0; t < 20; ++t) {
    const int d = g.uniform_int(1, 4);
    const Point z = g.unit_point(d);
    const Eigen::MatrixXcd u = unitary_to(z);
    CHECK((u.adjoint() * u - Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff() < 1e-13);
    for (int i = 0; i < d; ++i) CHECK(std::abs(u(i, 0) - z[static_cast<std::size_t>(i)]) < 1e-13);
  }
  const Eigen::MatrixXcd neg = unitary_to({cplx{-1.0}, cplx{0.0}});
  CHECK(std::abs(neg(0, 0) + 1.0) < 1e-15);
  CHECK(std::abs(neg(1, 1) - 1.0) < 1e-15);
  CHECK(std::abs(neg(0, 1)) < 1e-15);
  const Eigen::MatrixXcd axis2 = unitary_to({cplx{0.0}, cplx{0.0, 1.0}});
  CHECK(std::abs(axis2(1, 0) - cplx(0.0, 1.0)) < 1e-15);
}

TEST_CASE("PeakSpec validation") {
  CHECK_THROWS_AS(PeakSpec::point({cplx{0.6}, cplx{0.6}}).validate(), InvalidArgument);
  CHECK_THROWS_AS(PeakSpec::point({cplx{1.0}, cplx{0.0}}, 0).validate(), InvalidArgument);
  CHECK(PeakSpec::point({cplx{1.0}, cplx{0.0}}, 30).tail_bound() == std::ldexp(1.0, -30));
  CHECK(PeakSpec{}.terms == 30);
}

TEST_CASE("axis peak polynomial is exact") {
  const ExactSeries g = axis_peak_polynomial(2, 30);
  const std::vector<QComplex> e1{QComplex{Rational(1)}, QComplex{Rational(0)}};
  const QComplex v = g.evaluate(e1);
  CHECK(v.im == 0);
  CHECK(v.re == Rational(1) - Rational(Integer(1), Integer(1) << 30));

  QComplex at0 = g.evaluate(std::vector<QComplex>{QComplex{0}, QComplex{0}});
  Rational geo = 0, q = 1;
  for (int n = 1; n <= 30; ++n) geo += (q /= 4);
  CHECK(at0.re == geo);
  CHECK(g.evaluate(std::vector<QComplex>{QComplex{0}, QComplex{1}}).re == geo);
  CHECK(std::abs(to_double(geo) - 1.0 / 3.0) < 1e-17 + std::pow(4.0, -30));
}

TEST_CASE("peak_polynomial examples") {
  const Polynomial g = peak_polynomial(PeakSpec::point({cplx{1.0}, cplx{0.0}}, 30));
  CHECK(g.evaluate(Point{1.0, 0.0}).real() == doctest::Approx(1.0 - std::ldexp(1.0, -30)).epsilon(1e-15));
  CHECK(g.evaluate(Point{0.0, 0.0}).real() == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
  CHECK(g.evaluate(Point{0.0, 1.0}).real() == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
  CHECK_THROWS_AS(peak_polynomial(PeakSpec::circle()), InvalidArgument);
}

TEST_CASE("exact peak at rational targets") {
  Gen g(35);
  const Rational want = Rational(1) - Rational(Integer(1), Integer(1) << 12);
  for (int t = 0; t < 6; ++t) {
    const int d = g.uniform_int(1, 3);
    const auto z = g.rational_unit_point(d);
    const ExactSeries e = exact_peak_polynomial(z, 12);
    CHECK(e.evaluate(z) == QComplex{want});
    // The float construction agrees coefficientwise.
    Point zf;
    for (const auto& c : z) zf.push_back(c.to_cplx());
    CHECK(dalab::testing::max_abs_diff(to_float(e), peak_polynomial(PeakSpec::point(zf, 12))) < 1e-12);
  }
  // On the axis it is the axis series.
  CHECK(exact_peak_polynomial(std::vector<QComplex>{QComplex{1}, QComplex{0}}, 9) == axis_peak_polynomial(2, 9));
  CHECK_THROWS_AS(exact_peak_polynomial(std::vector<QComplex>{QComplex{Rational(1, 2)}}, 4), InvalidArgument);
}

TEST_CASE("rotated peak hits its target") {
  Gen g(34);
  for (int t = 0; t < 5; ++t) {
    const Point z = g.unit_point(2);
    const Polynomial p = peak_polynomial(PeakSpec::point(z, 20));
    CHECK(std::abs(p.evaluate(z) - (1.0 - std::ldexp(1.0, -20))) < 1e-12);
  }
}

TEST_CASE("circle_peak examples") {
  const Polynomial h1 = circle_peak(1);
  CHECK(h1 == P("2*z1*z2", 2));
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(h1.evaluate(Point{s, s}) - 1.0) < 1e-15);
  const Polynomial h2 = circle_peak(2);
  CHECK(dalab::testing::max_abs_diff(h2, P("z1*z2 + 2*(z1*z2)^2", 2)) < 1e-15);
  CHECK(h2.evaluate(Point{1.0, 0.0}) == cplx{0.0});
}

TEST_CASE("circle_peak equals 1 on the balanced circle") {
  for (int n = 1; n <= 16; ++n) {
    const Polynomial h = circle_peak(n);
    for (int i = 0; i < 100; ++i) {
      const double th = 2.0 * std::numbers::pi * (i + 0.5) / 100.0;
      CHECK(std::abs(h.evaluate(circle_point(th)) - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("target_distance") {
  const PeakSpec circ = PeakSpec::circle();
  CHECK(target_distance(circ, circle_point(0.3)) < 1e-7);
  CHECK(target_distance(circ, Point{1.0, 0.0}) == doctest::Approx(std::sqrt(2.0 - std::sqrt(2.0))).epsilon(1e-12));
  const PeakSpec pt = PeakSpec::point({cplx{1.0}, cplx{0.0}});
  CHECK(target_distance(pt, Point{0.0, 1.0}) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("peak_verify on the axis peak") {
  const PeakSpec spec = PeakSpec::point({cplx{1.0}, cplx{0.0}}, 30);
  PeakGrid grid;
  grid.exclusion_radius = 0.1;
  grid.attach_norm = false;
  const PeakReport r = peak_verify(peak_polynomial(spec), spec, grid);
  CHECK(std::abs(r.value_on_target - 1.0) <= spec.tail_bound() + 1e-15);
  CHECK(r.max_off_target < 1.0);
  CHECK(r.margin > 0.0);
  CHECK(r.grid_size >= 9000);
  CHECK(!r.mult_norm.has_value());
}

TEST_CASE("peak_verify on h_4 away from the circle") {
  const PeakSpec spec = PeakSpec::circle();
  PeakGrid grid;
  grid.attach_norm = true;
  const PeakReport r = peak_verify(circle_peak(4), spec, grid);
  CHECK(r.max_off_target < 1.0);
  CHECK(std::abs(r.value_on_target - 1.0) < 1e-12);
  REQUIRE(r.mult_norm.has_value());
  CHECK(r.mult_norm->value >= 1.0 - 1e-9);
}

TEST_CASE("peak_verify trivial and failing cases") {
  const PeakSpec spec = PeakSpec::point({cplx{1.0}, cplx{0.0}});
  PeakGrid none;
  none.exclusion_radius = 0.0;
  none.attach_norm = false;
  const PeakReport r = peak_verify(P("1", 2), spec, none);
  CHECK(r.max_off_target == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(r.margin == doctest::Approx(0.0).epsilon(1e-15));

  PeakGrid all = none;
  all.exclusion_radius = 3.0;
  CHECK_THROWS_AS(peak_verify(P("1", 2), spec, all), InvalidArgument);
}

TEST_CASE("peak grid CSV has one row per grid point") {
  const PeakSpec spec = PeakSpec::point({cplx{1.0}, cplx{0.0}}, 4);
  PeakGrid grid;
  grid.n_points = 200;
  const std::string csv = peak_grid_csv(peak_polynomial(spec), spec, grid);
  CHECK(csv.rfind("re1,im1,re2,im2,abs,excluded\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == static_cast<long>(sphere_grid(2, 200, grid.seed).size()) + 1);
}

TEST_CASE("supnorm_on_K_powers examples") {
  const Polynomial f = P("0.5 + 0.5*z1", 2);
  const Point k{1.0, 0.0};

  // ||f^n|| = 1 exactly; truncated norms approach it from below.
  const SupKTable g1 = supnorm_on_K_powers(P("1", 2), f, k, 8);
  CHECK(g1.target == doctest::Approx(1.0));
  for (const auto& r : g1.rows) {
    CHECK(r.power <= 1.0 + 1e-9);
    CHECK(r.power >= 0.98);
  }
  SupKOptions wide;
  wide.slack = 64;
  const SupKTable g1w = supnorm_on_K_powers(P("1", 2), f, k, 8, wide);
  for (std::size_t i = 0; i < g1.rows.size(); ++i) {
    CHECK(g1w.rows[i].power >= g1.rows[i].power - 1e-9);
    CHECK(g1w.rows[i].power <= 1.0 + 1e-9);
  }

  const SupKTable z1 = supnorm_on_K_powers(P("z1", 2), f, k, 8);
  for (const auto& r : z1.rows) CHECK(r.best >= 0.98);

  const SupKTable z2 = supnorm_on_K_powers(P("z2", 2), f, k, 16);
  std::vector<int> ns;
  for (const auto& r : z2.rows) ns.push_back(r.n);
  CHECK(ns == std::vector<int>{1, 2, 4, 8, 16});
  for (std::size_t i = 1; i < z2.rows.size(); ++i) CHECK(z2.rows[i].best <= z2.rows[i - 1].best + 1e-6);
  CHECK(z2.target == 0.0);
}
