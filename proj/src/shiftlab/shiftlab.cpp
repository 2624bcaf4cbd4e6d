// Copyright 2026 The dalab Authors
// SPDX-License-Identifier: Apache-2.0

#include "dalab/shiftlab/shiftlab.hpp"

#include <cmath>
#include <exception>
#include <sstream>

#include <Eigen/SVD>

#include "dalab/error.hpp"
#include "dalab/json_format.hpp"

namespace dalab {

namespace {

void check_km(int k, int m) {
  if (k < 1) throw InvalidArgument("weight needs k >= 1");
  if (m < 0) throw InvalidArgument("weight needs m >= 0");
}

// beta^2 written as a telescoped product:
//   4^k prod_{i=1..k} (m+i)(m+j+i) / prod_{i=1..2k} (2m+j+i).
Rational beta_squared(int k, int m, int j) {
  Integer num = Integer(1) << (2 * k);
  Integer den = 1;
  for (int i = 1; i <= k; ++i) num *= Integer(m + i) * Integer(m + j + i);
  for (int i = 1; i <= 2 * k; ++i) den *= Integer(2 * m + j + i);
  return Rational(num, den);
}

Weight make_weight(Rational sq) {
  const double v = std::sqrt(to_double(sq));
  return {std::move(sq), v};
}

}  // namespace

Weight alpha_weight(int k, int m) {
  check_km(k, m);
  return make_weight(beta_squared(k, m, 0));
}

Weight beta_weight(int k, int m, int j) {
  check_km(k, m);
  if (j < 0) throw InvalidArgument("weight needs j >= 0");
  return make_weight(beta_squared(k, m, j));
}

double alpha_value(int k, int m) {
  check_km(k, m);
  double sq = 1.0;
  for (int i = 1; i <= k; ++i) sq *= (2.0 * m + 2.0 * i) / (2.0 * m + 2.0 * i - 1.0);
  return std::sqrt(sq);
}

const Rational& WeightTable::at(int k, int m, int j) const {
  if (k < 1 || k > k_max || m < 0 || m > m_max || j < 0 || j > j_max)
    throw InvalidArgument("weight table index out of range");
  const auto idx = (static_cast<std::size_t>(k - 1) * static_cast<std::size_t>(m_max + 1) + static_cast<std::size_t>(m)) *
                       static_cast<std::size_t>(j_max + 1) +
                   static_cast<std::size_t>(j);
  return squared[idx];
}

WeightTable weight_table(int k_max, int m_max, int j_max, Exec exec) {
  if (k_max < 1 || m_max < 0 || j_max < 0) throw InvalidArgument("invalid weight table bounds");
  WeightTable t{k_max, m_max, j_max, {}};
  const std::size_t per_k = static_cast<std::size_t>(m_max + 1) * static_cast<std::size_t>(j_max + 1);
  t.squared.resize(per_k * static_cast<std::size_t>(k_max));
#pragma omp parallel for schedule(dynamic) if (exec == Exec::parallel)
  for (int k = 1; k <= k_max; ++k)
    for (int m = 0; m <= m_max; ++m)
      for (int j = 0; j <= j_max; ++j)
        t.squared[static_cast<std::size_t>(k - 1) * per_k +
                  static_cast<std::size_t>(m) * static_cast<std::size_t>(j_max + 1) + static_cast<std::size_t>(j)] =
            beta_squared(k, m, j);
  return t;
}

MonotonicityReport weight_monotonicity_check(int k_max, int m_max, int j_max, Exec exec) {
  if (k_max < 1 || m_max < 0 || j_max < 0) throw InvalidArgument("invalid monotonicity bounds");
  std::vector<std::vector<WeightViolation>> per_k(static_cast<std::size_t>(k_max));
  std::vector<std::size_t> counts(static_cast<std::size_t>(k_max), 0);
#pragma omp parallel for schedule(dynamic) if (exec == Exec::parallel)
  for (int k = 1; k <= k_max; ++k) {
    auto& out = per_k[static_cast<std::size_t>(k - 1)];
    std::size_t checked = 0;
    for (int m = 0; m <= m_max; ++m) {
      // alpha computed from the binomial form, independently of the product.
      const Rational alpha_sq(Integer(binomial(static_cast<unsigned>(2 * m), static_cast<unsigned>(m))) << (2 * k),
                              binomial(static_cast<unsigned>(2 * m + 2 * k), static_cast<unsigned>(m + k)));
      Rational prev;
      for (int j = 0; j <= j_max; ++j) {
        const Rational b = beta_squared(k, m, j);
        ++checked;
        if (j == 0 && b != alpha_sq) out.push_back({k, m, j, "beta0_ne_alpha"});
        if (j > 0 && b > prev) out.push_back({k, m, j, "beta_increase_in_j"});
        if (b > alpha_sq) out.push_back({k, m, j, "beta_above_alpha"});
        prev = b;
      }
    }
    counts[static_cast<std::size_t>(k - 1)] = checked;
  }
  MonotonicityReport r;
  for (int k = 0; k < k_max; ++k) {
    r.checked += counts[static_cast<std::size_t>(k)];
    for (auto& v : per_k[static_cast<std::size_t>(k)]) r.violations.push_back(std::move(v));
  }
  r.pass = r.violations.empty();
  return r;
}

double stirling_ratio(int k, int m) {
  check_km(k, m);
  const double base = static_cast<double>(m + k + 1) / static_cast<double>(m + 1);
  return alpha_value(k, m) / std::pow(base, 0.25);
}

StirlingMax stirling_grid_max(int k_max, int m_max, Exec exec) {
  if (k_max < 1 || m_max < 0) throw InvalidArgument("invalid Stirling grid bounds");
  std::vector<StirlingMax> best(static_cast<std::size_t>(k_max));
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
  for (int k = 1; k <= k_max; ++k) {
    StirlingMax b{-1.0, k, 0};
    for (int m = 0; m <= m_max; ++m) {
      const double v = stirling_ratio(k, m);
      if (v > b.value) b = {v, k, m};
    }
    best[static_cast<std::size_t>(k - 1)] = b;
  }
  StirlingMax out = best.front();
  for (const auto& b : best)
    if (b.value > out.value) out = b;
  return out;
}

Eigen::MatrixXd cesaro_matrix(int n, int truncation) {
  if (n < 1) throw InvalidArgument("Cesaro mean needs n >= 1");
  if (truncation < 0) throw InvalidArgument("negative truncation");
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(truncation + n + 1, truncation + 1);
  for (int m = 0; m <= truncation; ++m) {
    // Running product of the one-step ratios gives alpha(k,m)^2 for k = 1..n.
    double sq = 1.0;
    for (int k = 1; k <= n; ++k) {
      sq *= (2.0 * m + 2.0 * k) / (2.0 * m + 2.0 * k - 1.0);
      a(m + k, m) = std::sqrt(sq) / n;
    }
  }
  return a;
}

CesaroRecord cesaro_operator_norm(int n, int truncation) {
  if (n < 1) throw InvalidArgument("Cesaro mean needs n >= 1");
  const int t = truncation < 0 ? 5 * n : truncation;
  if (t < 4 * n)
    throw InvalidArgument("Cesaro truncation " + std::to_string(t) + " below 4n = " + std::to_string(4 * n));
  const Eigen::MatrixXd a = cesaro_matrix(n, t);
  Eigen::BDCSVD<Eigen::MatrixXd> svd(a);
  const double s = svd.singularValues()(0);
  if (!std::isfinite(s) || s <= 0.0) throw NumericalFailure("Cesaro SVD returned " + format_float(s));
  return {n, t, s};
}

std::vector<CesaroRecord> cesaro_sweep(const std::vector<int>& ns) {
  std::vector<CesaroRecord> out;
  out.reserve(ns.size());
  for (int n : ns) out.push_back(cesaro_operator_norm(n));
  return out;
}

Polynomial cesaro_polynomial(int n) {
  if (n < 1) throw InvalidArgument("Cesaro mean needs n >= 1");
  Polynomial h(2);
  double pow2 = 1.0;
  for (int k = 1; k <= n; ++k) {
    pow2 *= 2.0;
    h.add_term(MultiIndex({k, k}), cplx{pow2 / n, 0.0});
  }
  return h;
}

nlohmann::json to_json(const std::vector<CesaroRecord>& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : table) rows.push_back({{"n", r.n}, {"truncation", r.truncation}, {"norm", r.norm}});
  return {{"records", rows}};
}

std::string to_csv(const std::vector<CesaroRecord>& table) {
  std::ostringstream os;
  os << "n,truncation,norm\n";
  for (const auto& r : table) os << r.n << ',' << r.truncation << ',' << format_float(r.norm) << '\n';
  return os.str();
}

}  // namespace dalab
