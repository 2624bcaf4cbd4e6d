// Copyright 2026 The dalab Authors
// SPDX-License-Identifier: Apache-2.0

#include "dalab/cauchy/cauchy.hpp"

#include <cmath>
#include <random>

#include "dalab/json_format.hpp"

namespace dalab {

Integer cauchy_weight(const MultiIndex& a) {
  const int d = a.dim();
  return binomial(static_cast<unsigned>(a.degree() + d - 1), static_cast<unsigned>(d - 1)) * multinomial(a);
}

Rational sigma_integral(const MultiIndex& a, const MultiIndex& b) {
  if (a.dim() != b.dim()) throw InvalidArgument("sigma_integral dimension mismatch");
  if (a != b) return Rational(0);
  const int d = a.dim();
  Integer num = factorial(static_cast<unsigned>(d - 1));
  for (int e : a.exponents()) num *= factorial(static_cast<unsigned>(e));
  return Rational(num, factorial(static_cast<unsigned>(d - 1 + a.degree())));
}

SigmaValidation validate_sigma_integrals(int d, int max_degree, std::size_t samples, std::uint64_t seed,
                                         double threshold) {
  if (d < 1) throw InvalidArgument("invalid dimension " + std::to_string(d));
  if (max_degree < 0) throw InvalidArgument("negative degree bound");
  if (samples < 2) throw InvalidArgument("Monte Carlo validation needs at least two samples");
  SigmaValidation out{d, max_degree, samples, seed, threshold, {}, true};

  std::vector<MultiIndex> alphas;
  for (int k = 0; k <= max_degree; ++k)
    for (auto& a : enum_multiindices(d, k)) alphas.push_back(std::move(a));
  const std::size_t na = alphas.size();

  constexpr std::size_t kChunk = std::size_t{1} << 16;
  const std::size_t nchunks = (samples + kChunk - 1) / kChunk;
  std::vector<double> sums(nchunks * na, 0.0), sqsums(nchunks * na, 0.0);
  const auto seed_lo = static_cast<std::uint32_t>(seed & 0xffffffffu);
  const auto seed_hi = static_cast<std::uint32_t>(seed >> 32);

#pragma omp parallel for schedule(static)
  for (long c = 0; c < static_cast<long>(nchunks); ++c) {
    std::seed_seq seq{seed_lo, seed_hi, static_cast<std::uint32_t>(c)};
    std::mt19937_64 rng(seq);
    const std::size_t begin = static_cast<std::size_t>(c) * kChunk;
    const std::size_t end = std::min(samples, begin + kChunk);
    double* s = sums.data() + static_cast<std::size_t>(c) * na;
    double* q = sqsums.data() + static_cast<std::size_t>(c) * na;
    // pw[i][e] = |z_i|^(2e)
    std::vector<std::vector<double>> pw(static_cast<std::size_t>(d), std::vector<double>(max_degree + 1, 1.0));
    for (std::size_t i = begin; i < end; ++i) {
      const Point z = gaussian_sphere_point(rng, d);
      for (int j = 0; j < d; ++j) {
        const double m = std::norm(z[static_cast<std::size_t>(j)]);
        for (int e = 1; e <= max_degree; ++e)
          pw[static_cast<std::size_t>(j)][static_cast<std::size_t>(e)] =
              pw[static_cast<std::size_t>(j)][static_cast<std::size_t>(e) - 1] * m;
      }
      for (std::size_t k = 0; k < na; ++k) {
        double v = 1.0;
        for (int j = 0; j < d; ++j) v *= pw[static_cast<std::size_t>(j)][static_cast<std::size_t>(alphas[k][j])];
        s[k] += v;
        q[k] += v * v;
      }
    }
  }

  const double n = static_cast<double>(samples);
  for (std::size_t k = 0; k < na; ++k) {
    double sum = 0.0, sq = 0.0;
    for (std::size_t c = 0; c < nchunks; ++c) {
      sum += sums[c * na + k];
      sq += sqsums[c * na + k];
    }
    SigmaCheckRow row;
    row.alpha = alphas[k];
    row.closed_form = sigma_integral(alphas[k], alphas[k]);
    row.mc_mean = sum / n;
    const double var = std::max(0.0, (sq / n - row.mc_mean * row.mc_mean) * n / (n - 1.0));
    row.mc_stderr = std::sqrt(var / n);
    const double diff = row.mc_mean - to_double(row.closed_form);
    if (row.mc_stderr > 0.0) {
      row.z_score = diff / row.mc_stderr;
      row.pass = std::abs(row.z_score) <= threshold;
    } else {
      row.z_score = 0.0;
      row.pass = std::abs(diff) <= 1e-12;
    }
    out.pass = out.pass && row.pass;
    out.rows.push_back(std::move(row));
  }
  return out;
}

nlohmann::json to_json(const SigmaValidation& v) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : v.rows) {
    const auto e = r.alpha.exponents();
    rows.push_back({{"index", std::vector<int>(e.begin(), e.end())},
                    {"closed_form", r.closed_form.str()},
                    {"closed_form_value", to_double(r.closed_form)},
                    {"mc_mean", r.mc_mean},
                    {"mc_stderr", r.mc_stderr},
                    {"z_score", r.z_score},
                    {"pass", r.pass}});
  }
  return {{"d", v.d},         {"max_degree", v.max_degree}, {"samples", v.samples}, {"seed", v.seed},
          {"threshold", v.threshold}, {"pass", v.pass},     {"rows", rows}};
}

}  // namespace dalab
