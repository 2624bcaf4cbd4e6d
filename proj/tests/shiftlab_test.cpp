// Copyright 2026 The dalab Authors
// SPDX-License-Identifier: Apache-2.0

#include "doctest.h"

#include <cmath>

#include "dalab/fockcore/poly_io.hpp"
#include "dalab/multop/norms.hpp"
#include "dalab/shiftlab/shiftlab.hpp"
#include "support/generators.hpp"

using namespace dalab;

namespace {

// ||M_{h0^k} v||^2 / ||v||^2 for v = z1^a z2^b: (2z1z2)^k v is again a
// monomial, so the squared weight is 4^k ||z^(a+k,b+k)||^2 / ||z^(a,b)||^2.
Rational squared_matrix_element(int k, int a, int b) {
  Rational four_k = 1;
  for (int i = 0; i < k; ++i) four_k *= 4;
  return four_k * monomial_norm_sq(MultiIndex({a + k, b + k})) / monomial_norm_sq(MultiIndex({a, b}));
}

}  // namespace

TEST_CASE("alpha_weight examples") {
  CHECK(alpha_weight(1, 0).squared == Rational(2));
  CHECK(alpha_weight(1, 0).value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(alpha_weight(1, 1).squared == Rational(4, 3));
  for (int m = 0; m <= 20; ++m) CHECK(alpha_weight(1, m).squared == Rational(2 * (m + 1), 2 * m + 1));
}

TEST_CASE("alpha(1,m)^2 decreases toward 1") {
  Rational prev = alpha_weight(1, 0).squared;
  for (int m = 1; m <= 1000; ++m) {
    const Rational cur = alpha_weight(1, m).squared;
    CHECK(cur < prev);
    CHECK(cur > 1);
    prev = cur;
  }
  CHECK(to_double(prev) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("beta_weight examples") {
  CHECK(beta_weight(1, 0, 0).squared == Rational(2));
  CHECK(beta_weight(1, 0, 1).squared == Rational(4, 3));
  CHECK(beta_weight(2, 0, 0).squared == Rational(8, 3));
  CHECK(beta_weight(1, 0, 1).value < alpha_weight(1, 0).value);
}

TEST_CASE("weights agree exactly with monomial-norm matrix elements") {
  for (int k = 1; k <= 4; ++k)
    for (int m = 0; m <= 12; ++m) {
      CHECK(alpha_weight(k, m).squared == squared_matrix_element(k, m, m));
      for (int j = 0; j <= 8; ++j) {
        CHECK(beta_weight(k, m, j).squared == squared_matrix_element(k, m + j, m));  // f_{j,m}
        CHECK(beta_weight(k, m, j).squared == squared_matrix_element(k, m, m + j));  // g_{j,m}
      }
    }
}

TEST_CASE("weights agree with mult_matrix of (2 z1 z2)^k") {
  const GradedBasis basis(2, 40);
  for (int k = 1; k <= 4; ++k) {
    const Polynomial h = parse_polynomial("2*z1*z2", 2).pow(k);
    const Eigen::MatrixXcd m = mult_matrix(h, 28).to_dense();
    for (int mm = 0; mm <= 12; ++mm)
      for (int j = 0; j <= 3; ++j) {
        const auto col = static_cast<Eigen::Index>(basis.position(MultiIndex({mm + j, mm})));
        const auto row = static_cast<Eigen::Index>(basis.position(MultiIndex({mm + j + k, mm + k})));
        CHECK(m(row, col).real() == doctest::Approx(beta_weight(k, mm, j).value).epsilon(1e-13));
      }
  }
}

TEST_CASE("alpha_value matches the exact square root") {
  for (int k = 1; k <= 8; ++k)
    for (int m = 0; m <= 50; ++m) CHECK(alpha_value(k, m) == doctest::Approx(alpha_weight(k, m).value).epsilon(1e-13));
}

TEST_CASE("weight_monotonicity_check passes on the full grid") {
  const MonotonicityReport r = weight_monotonicity_check(8, 50, 20);
  CHECK(r.pass);
  CHECK(r.violations.empty());
  CHECK(r.checked == 8u * 51u * 21u);
  const MonotonicityReport small = weight_monotonicity_check(1, 1, 1);
  CHECK(small.pass);
}

TEST_CASE("j = 0 column equals alpha exactly") {
  const WeightTable t = weight_table(6, 30, 4);
  for (int k = 1; k <= 6; ++k)
    for (int m = 0; m <= 30; ++m) CHECK(t.at(k, m, 0) == alpha_weight(k, m).squared);
}

TEST_CASE("weight_table is identical in serial and parallel") {
  const WeightTable a = weight_table(5, 20, 6, Exec::serial), b = weight_table(5, 20, 6, Exec::parallel);
  CHECK(a.squared == b.squared);
}

TEST_CASE("alpha(k,m) is non-increasing in m") {
  for (int k = 1; k <= 8; ++k)
    for (int m = 1; m <= 200; ++m) CHECK(alpha_weight(k, m).squared <= alpha_weight(k, m - 1).squared);
}

TEST_CASE("stirling_ratio examples") {
  CHECK(stirling_ratio(1, 0) == doctest::Approx(std::sqrt(2.0) / std::pow(2.0, 0.25)).epsilon(1e-12));
  for (int k : {1, 4, 16}) CHECK(stirling_ratio(k, 1000) == doctest::Approx(1.0).epsilon(0.02));
  const StirlingMax s = stirling_grid_max(64, 1000);
  CHECK(s.value < 2.0);
  // Regression constant recorded from the first exhaustive run.
  CHECK(s.value == doctest::Approx(1.327480755718495).epsilon(1e-12));
  CHECK(s.k == 64);
  CHECK(s.m == 0);
}

TEST_CASE("cesaro_operator_norm examples") {
  CHECK(cesaro_operator_norm(1).norm == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
  const CesaroRecord two = cesaro_operator_norm(2);
  CHECK(two.truncation == 10);
  CHECK(two.norm > 1.0);
  CHECK(two.norm < std::sqrt(2.0));
  // Independent oracle: the 13 x 11 matrix from alpha_value and a Jacobi SVD.
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(13, 11);
  for (int mm = 0; mm <= 10; ++mm)
    for (int k = 1; k <= 2; ++k) m(mm + k, mm) += alpha_value(k, mm) / 2.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  CHECK(two.norm == doctest::Approx(svd.singularValues()(0)).epsilon(1e-12));
  CHECK_THROWS_AS(cesaro_operator_norm(4, 15), InvalidArgument);
  CHECK_THROWS_AS(cesaro_operator_norm(0), InvalidArgument);
}

TEST_CASE("cesaro_sweep plateaus and handles the empty list") {
  CHECK(cesaro_sweep({}).empty());
  const auto t = cesaro_sweep({1, 2, 4, 8, 16, 32, 64});
  REQUIRE(t.size() == 7);
  double mx = 0.0;
  for (const auto& r : t) {
    CHECK(r.truncation == 5 * r.n);
    CHECK(r.norm >= 1.0 - 1e-6);
    mx = std::max(mx, r.norm);
  }
  CHECK(mx < 3.0);
  CHECK(std::abs(t[6].norm - t[5].norm) < 0.05);
  // Regression value of the n = 64 entry from the first run.
  CHECK(t[6].norm == doctest::Approx(1.128875754966).epsilon(1e-9));
}

TEST_CASE("cesaro norm is non-decreasing in truncation and stable from 5n to 8n") {
  for (int n = 1; n <= 16; ++n) {
    const double a = cesaro_operator_norm(n, 4 * n).norm;
    const double b = cesaro_operator_norm(n, 5 * n).norm;
    const double c = cesaro_operator_norm(n, 8 * n).norm;
    CHECK(b >= a - 1e-12);
    CHECK(c >= b - 1e-12);
    CHECK(c - b < 1e-6);
  }
}

TEST_CASE("cesaro norm on E equals the norm of M_{h_n} on truncated H^2_2") {
  for (int n = 1; n <= 8; ++n) {
    const int t = 5 * n;
    const double on_e = cesaro_operator_norm(n, t).norm;
    const double full = op_norm(mult_matrix(cesaro_polynomial(n), 2 * t), 1e-11);
    CHECK(full == doctest::Approx(on_e).epsilon(1e-6));
  }
}

TEST_CASE("cesaro_polynomial coefficients") {
  const Polynomial h3 = cesaro_polynomial(3);
  CHECK(h3.size() == 3);
  for (int k = 1; k <= 3; ++k) CHECK(h3.coeff(MultiIndex({k, k})).real() == doctest::Approx(std::pow(2.0, k) / 3.0));
}

TEST_CASE("cesaro table serializes with fixed columns") {
  const auto t = cesaro_sweep({1, 2});
  const std::string csv = to_csv(t);
  CHECK(csv.rfind("n,truncation,norm\n", 0) == 0);
  const auto j = to_json(t);
  CHECK(j["records"].size() == 2);
  CHECK(j["records"][0]["truncation"] == 5);
}
