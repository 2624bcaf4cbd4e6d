// Copyright 2026 The dalab Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance runner. `acceptance <id>...` runs the listed criteria (1-13,
// or "all") and prints one PASS/FAIL line each, with the measured values.
// Each criterion includes its wall-clock budget. Exit status is the number
// of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "dalab/cauchy/cauchy.hpp"
#include "dalab/cli/cli.hpp"
#include "dalab/fockcore/full_fock.hpp"
#include "dalab/fockcore/poly_io.hpp"
#include "dalab/functionals/functionals.hpp"
#include "dalab/multop/norms.hpp"
#include "dalab/peaklab/peaklab.hpp"
#include "dalab/shiftlab/shiftlab.hpp"
#include "support/generators.hpp"

using namespace dalab;
using dalab::testing::Gen;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

std::string g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string exe_path;  // CLI binary for criterion 13, if given

Integer int_factorial(int n) {
  Integer f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// 1. ||z^a||^2 = a!/|a|! exactly for d <= 4, deg <= 12.
void monomial_norms(Verdict& v) {
  std::size_t checked = 0, bad = 0;
  for (int d = 1; d <= 4; ++d)
    for (const auto& e : [&] {
           std::vector<std::vector<int>> all;
           for (int k = 0; k <= 12; ++k)
             for (auto& x : dalab::testing::brute_force_indices(d, k)) all.push_back(x);
           return all;
         }()) {
      Integer num = 1;
      int n = 0;
      for (int x : e) {
        num *= int_factorial(x);
        n += x;
      }
      ++checked;
      if (monomial_norm_sq(MultiIndex(e)) != Rational(num, int_factorial(n))) ++bad;
    }
  v.detail << "indices=" << checked << " mismatches=" << bad;
  v.require(bad == 0 && checked > 0, "exact monomial norms");
}

// 2. Compression identity, deviation exactly 0 for d <= 3, N <= 5.
void compression(Verdict& v) {
  double worst = 0.0;
  std::size_t entries = 0, mism = 0;
  for (int d = 1; d <= 3; ++d)
    for (int k = 1; k <= d; ++k)
      for (int n = 1; n <= 5; ++n) {
        const CompressionReport r = compression_check(d, k, n);
        worst = std::max(worst, r.max_deviation);
        entries += r.entries_compared;
        mism += r.mismatches;
      }
  v.detail << "entries=" << entries << " max_deviation=" << g17(worst) << " mismatches=" << mism;
  v.require(worst == 0.0 && mism == 0, "deviation exactly 0");
}

// 3. <p, k_z> = p(z) exactly for 50 random rational polynomials and points.
void reproducing(Verdict& v) {
  Gen g(3003);
  int ok = 0;
  for (int t = 0; t < 50; ++t) {
    const int d = g.uniform_int(1, 3);
    const int n = g.uniform_int(0, 6);
    const ExactSeries p = g.rational_polynomial(d, n);
    const auto z = g.rational_ball_point(d);
    const ExactSeries k = kernel_vector<QComplex>(std::span<const QComplex>(z), n);
    if (inner_product(p, k) == p.evaluate(z)) ++ok;
  }
  v.detail << "exact matches=" << ok << "/50";
  v.require(ok == 50, "all 50 cases exact");
}

// 4. Weights vs matrix elements of M_{(2 z1 z2)^k}, and monotonicity.
void weights(Verdict& v) {
  std::size_t checked = 0, bad = 0;
  for (int k = 1; k <= 4; ++k) {
    Rational four_k = 1;
    for (int i = 0; i < k; ++i) four_k *= 4;
    for (int m = 0; m <= 12; ++m) {
      // <M (e), e'>^2 for e = z^(a,b)/||.||: 4^k ||z^(a+k,b+k)||^2 / ||z^(a,b)||^2
      auto elem = [&](int a, int b) {
        return four_k * monomial_norm_sq(MultiIndex({a + k, b + k})) / monomial_norm_sq(MultiIndex({a, b}));
      };
      ++checked;
      bad += alpha_weight(k, m).squared != elem(m, m);
      for (int j = 0; j <= 8; ++j) {
        checked += 2;
        bad += beta_weight(k, m, j).squared != elem(m + j, m);
        bad += beta_weight(k, m, j).squared != elem(m, m + j);
      }
    }
  }
  const MonotonicityReport mono = weight_monotonicity_check(8, 50, 20);
  v.detail << "matrix elements=" << checked << " mismatches=" << bad << " monotonicity checked=" << mono.checked
           << " violations=" << mono.violations.size();
  v.require(bad == 0, "exact weight agreement");
  v.require(mono.pass && mono.checked == 8u * 51u * 21u, "monotonicity on (8,50,20)");
}

// 5. Norm gap for (z1 z2)^n, n in {2,4,8,16}.
void norm_gap(Verdict& v) {
  for (int n : {2, 4, 8, 16}) {
    const Polynomial p = parse_polynomial("z1*z2", 2).pow(n);
    const double closed = std::exp(2.0 * std::lgamma(n + 1.0) - std::lgamma(2.0 * n + 1.0)) > 0
                              ? std::sqrt(std::exp(2.0 * std::lgamma(n + 1.0) - std::lgamma(2.0 * n + 1.0)))
                              : 0.0;
    const Eigen::MatrixXcd dense = dalab::testing::dense_mult_oracle(p, 6);
    const double svd = Eigen::BDCSVD<Eigen::MatrixXcd>(dense).singularValues()(0);
    const GapReport gap = norm_gap_report(p, 2 * n + 8);
    const double scaled = gap.ratio / std::pow(M_PI * n, 0.25);
    v.detail << " n=" << n << ": mult=" << g17(gap.mult_norm) << " svd=" << g17(svd) << " closed=" << g17(closed)
             << " sup=" << g17(gap.sup_norm) << " ratio/(pi n)^(1/4)=" << g17(scaled);
    v.require(std::abs(gap.mult_norm - svd) <= 1e-8, "mult vs SVD oracle n=" + std::to_string(n));
    v.require(std::abs(gap.mult_norm - closed) <= 1e-8, "mult vs closed form n=" + std::to_string(n));
    v.require(std::abs(gap.sup_norm - std::ldexp(1.0, -n)) <= 1e-9, "sup = 2^-n n=" + std::to_string(n));
    v.require(scaled >= 0.95 && scaled <= 1.10, "ratio scaling n=" + std::to_string(n));
  }
}

// 6. ||z1 z2||_M = 1/sqrt 2 at every truncation.
void specific_value(Verdict& v) {
  const Polynomial p = parse_polynomial("z1*z2", 2);
  const double target = 1.0 / std::sqrt(2.0);
  const NormEstimate e = multiplier_norm(p, 30);
  double worst = 0.0;
  for (const auto& [n, val] : e.sweep) worst = std::max(worst, std::abs(val - target));
  for (int n = 0; n <= 30; ++n) worst = std::max(worst, std::abs(op_norm(mult_matrix(p, n)) - target));
  v.detail << "truncations 0..30, max |norm - 1/sqrt2|=" << g17(worst);
  v.require(worst <= 1e-9, "1/sqrt2 within 1e-9");
}

// 7. Cesaro boundedness.
void cesaro(Verdict& v) {
  const auto t = cesaro_sweep({1, 2, 4, 8, 16, 32, 64});
  double mx = 0.0;
  for (const auto& r : t) {
    mx = std::max(mx, r.norm);
    v.detail << " n=" << r.n << ":" << g17(r.norm);
  }
  const double plateau = std::abs(t[6].norm - t[5].norm);
  v.detail << " max=" << g17(mx) << " |v64-v32|=" << g17(plateau);
  bool trunc = true;
  for (const auto& r : t) trunc = trunc && r.truncation == 5 * r.n;
  v.require(trunc, "truncation 5n");
  v.require(mx < 3.0, "max < 3");
  v.require(plateau < 0.05, "plateau < 0.05");
  v.require(std::abs(t[0].norm - std::sqrt(2.0)) <= 1e-9, "n=1 equals sqrt 2");
}

// 8. Peak polynomials at 10 random unit targets, M = 30. The targets have
// rational coordinates, so the on-target value is checked exactly on the
// exact series; the float polynomial must match that series and carries the
// norm and off-target checks.
void peak(Verdict& v) {
  const Rational expected = Rational(1) - Rational(Integer(1), Integer(1) << 30);
  Gen g(8008);
  int exact = 0;
  double worst_norm = 0.0, worst_value = 0.0, worst_off = 0.0, worst_coeff = 0.0;
  for (int t = 0; t < 10; ++t) {
    const auto zq = g.rational_unit_point(2);
    Point z;
    for (const auto& c : zq) z.push_back(c.to_cplx());
    const ExactSeries e = exact_peak_polynomial(zq, 30);
    exact += e.evaluate(zq) == QComplex{expected};

    const PeakSpec spec = PeakSpec::point(z, 30);
    const Polynomial p = peak_polynomial(spec);
    worst_coeff = std::max(worst_coeff, dalab::testing::max_abs_diff(to_float(e), p));
    PeakGrid grid;
    grid.n_points = 10000;
    grid.exclusion_radius = 0.05;
    grid.seed = 100 + static_cast<std::uint64_t>(t);
    const PeakReport r = peak_verify(p, spec, grid);
    worst_norm = std::max(worst_norm, r.mult_norm->value);
    worst_value = std::max(worst_value, std::abs(r.value_on_target - to_double(expected)));
    worst_off = std::max(worst_off, r.max_off_target);
    v.require(r.grid_size >= 10000, "grid of at least 1e4 points");
  }
  v.detail << "exact on-target 1-2^-30: " << exact << "/10"
           << " max |float coeff - exact coeff|=" << g17(worst_coeff) << " max mult norm=" << g17(worst_norm)
           << " max |float g(zeta0) - (1-2^-30)|=" << g17(worst_value) << " max off-target=" << g17(worst_off);
  v.require(exact == 10, "on-target value exactly 1 - 2^-30");
  v.require(worst_coeff <= 1e-12, "float polynomial matches the exact series");
  v.require(worst_norm <= 1.0 + 1e-6, "multiplier norm <= 1 + 1e-6");
  v.require(worst_off < 1.0, "off-target modulus < 1");
}

// 9. Singular and Henkin certificates.
void certificates(Verdict& v) {
  AtomicMeasure m;
  m.d = 2;
  m.atoms.push_back({1.0, {1.0, 0.0}});
  const auto rows = singular_witness(m, 20);
  bool exact = rows.size() == 20;
  for (const auto& r : rows) exact = exact && r.mult_norm == 1.0 && r.value_abs == 1.0;
  v.detail << "singular rows (1,1) for n<=20: " << (exact ? "yes" : "no");
  v.require(exact, "singular witness rows exactly (1,1)");

  const Point w{0.3, 0.4};  // |w| = 0.5
  const DecayTable t = henkin_decay(kernel_pair(w, 20, 20), {1.0, 0.0}, 20);
  const double want = std::norm(w[0]);  // |w1|^2
  double worst = 0.0, observed = 0.0;
  for (const auto& r : t.rows)
    if (r.n >= 1) {
      worst = std::max(worst, std::abs(r.ratio - want));
      observed = r.ratio;
    }
  v.detail << " henkin ratio observed=" << g17(observed) << " expected |w1|^2=" << g17(want)
           << " max deviation=" << g17(worst);
  v.require(worst <= 1e-9, "Henkin decay ratio |w1|^2 within 1e-9");
}

// 10. Extremal subspace and exposed functional for sqrt2 z1 z2.
void extremal(Verdict& v) {
  const Polynomial f = parse_polynomial("z1*z2", 2) * cplx{std::sqrt(2.0)};
  const ExtremalResult r = extremal_subspace(f, 12);
  v.detail << "status=" << to_string(r.status) << " top=" << g17(r.top) << " dim=" << r.dim_estimate
           << " gap=" << g17(r.gap);
  v.require(std::abs(r.top - 1.0) <= 1e-9, "top eigenvalue 1");
  v.require(r.dim_estimate == 1, "dim N = 1");
  v.require(r.gap >= 1.0 / 3.0 - 1e-6, "gap >= 1/3");
  if (r.vectors.empty()) {
    v.require(false, "eigenvector available");
    return;
  }
  const cplx val = eval_functional(exposed_functional(f, r.vectors.front()), f);
  v.detail << " exposed(f)=" << g17(val.real()) << "+" << g17(val.imag()) << "i";
  v.require(std::abs(val - 1.0) <= 1e-9, "exposed functional evaluates to 1");
}

// 11. Valskii approximants, Cauchy reproduction, sigma Monte Carlo.
void valskii(Verdict& v) {
  const ExactVectorPair phi{ExactSeries::constant(2, QComplex{1}), ExactSeries::coordinate(2, 0)};
  for (const Rational& r : {Rational(9, 10), Rational(99, 100)}) {
    const auto res = valskii_approximant<QComplex>(phi, QComplex{r}, ExactSeries::coordinate(2, 0), 8);
    // |Psi_r - 1| for a real value below 1 is 1 - Psi_r.
    const bool real_below_one = res.value.im == 0 && res.value.re <= 1;
    const bool ok = real_below_one && Rational(1) - res.value.re == Rational(1) - r;
    v.detail << "r=" << r.str() << ": |Psi-1|=" << (Rational(1) - res.value.re).str() << " ";
    v.require(ok, "|Psi_r - 1| = 1 - r exactly at r=" + r.str());
  }

  Gen g(1111);
  int exact = 0, cases = 0;
  for (int d = 1; d <= 3; ++d)
    for (int t = 0; t < 8; ++t) {
      const ExactSeries f = g.rational_polynomial(d, t < 2 ? 6 : g.uniform_int(0, 6));
      const auto z = g.rational_ball_point(d);
      ++cases;
      exact += cauchy_reproduce<QComplex>(f, std::span<const QComplex>(z)) == f.evaluate(z);
    }
  v.detail << "cauchy reproduction exact=" << exact << "/" << cases;
  v.require(exact == cases, "Cauchy reproduction exact");

  double zmax = 0.0;
  std::size_t rows = 0;
  bool mc = true;
  for (int d = 1; d <= 3; ++d) {
    const SigmaValidation s = validate_sigma_integrals(d, 6);
    mc = mc && s.pass;
    rows += s.rows.size();
    for (const auto& r : s.rows) zmax = std::max(zmax, std::abs(r.z_score));
  }
  v.detail << " sigma MC rows=" << rows << " samples=" << kDefaultMonteCarloSamples << " max|z|=" << g17(zmax);
  v.require(mc, "sigma Monte Carlo within 3 sigma");
}

// 12. Convex-hull bounds for g = z2 at K = {(1,0)}.
void supk(Verdict& v) {
  const SupKTable t = supnorm_on_K_powers(parse_polynomial("z2", 2), parse_polynomial("(1 + z1)/2", 2), {1.0, 0.0}, 32);
  bool mono = true;
  for (std::size_t i = 1; i < t.rows.size(); ++i) {
    mono = mono && t.rows[i].best <= t.rows[i - 1].best + 1e-6;
    mono = mono && t.rows[i].cesaro <= t.rows[i - 1].cesaro + 1e-6;
    mono = mono && t.rows[i].power <= t.rows[i - 1].power + 1e-6;
  }
  for (const auto& r : t.rows) v.detail << " n=" << r.n << ":" << g17(r.best);
  v.require(mono, "non-increasing");
  v.require(!t.rows.empty() && t.rows.back().n == 32 && t.rows.back().best < 0.2, "reaches < 0.2 by n = 32");
}

// 13. Byte-identical CLI output for repeated runs.
void determinism(Verdict& v) {
  const std::vector<std::vector<std::string>> battery{
      {"norm", "--poly", "z1*z2 - 0.4*z2^3 + (0,1)*z1"},
      {"gap", "--poly", "(z1*z2)^2", "--seed", "7"},
      {"cesaro", "--n-list", "1,2,4,8"},
      {"weights", "--k-max", "4", "--m-max", "20", "--j-max", "8"},
      {"peak", "--zeta", "0.6,0:0.8", "--M", "16", "--seed", "5"},
      {"supk", "--n-max", "8"},
      {"witness", "--mode", "henkin", "--n-max", "12"},
      {"expose", "--poly", "1.4142135623730951*z1*z2", "--N", "10"},
      {"valskii", "--samples", "100000", "--mc-degree", "4", "--seed", "11"},
      {"fock-check", "--N", "4", "--cases", "20", "--seed", "3"}};
  int same = 0;
  for (auto args : battery) {
    args.insert(args.begin(), "dalab");
    std::ostringstream a, b, ea, eb;
    const int ca = cli::run(args, a, ea), cb = cli::run(args, b, eb);
    const bool ok = ca == 0 && cb == 0 && a.str() == b.str() && !a.str().empty();
    same += ok;
    if (!ok) v.detail << " [" << args[1] << " differs]";
  }
  v.detail << "in-process identical=" << same << "/" << battery.size();
  v.require(same == static_cast<int>(battery.size()), "in-process runs identical");

  if (exe_path.empty()) return;
  // Separate processes with different thread caps must agree byte for byte.
  int procs = 0, procs_same = 0;
  for (const auto& args : battery) {
    std::string cmdline;
    for (std::size_t i = 0; i < args.size(); ++i) cmdline += " '" + args[i] + "'";
    std::string outs[2];
    for (int k = 0; k < 2; ++k) {
      const std::string file = "acceptance_det_" + std::to_string(k) + ".out";
      const std::string cmd = std::string("DA_LAB_THREADS=") + (k == 0 ? "1" : "3") + " '" + exe_path + "'" + cmdline +
                              " --out " + file;
      if (std::system(cmd.c_str()) != 0) break;
      std::ifstream in(file, std::ios::binary);
      std::ostringstream s;
      s << in.rdbuf();
      outs[k] = s.str();
      std::remove(file.c_str());
    }
    ++procs;
    procs_same += !outs[0].empty() && outs[0] == outs[1];
  }
  v.detail << " separate processes (1 vs 3 threads) identical=" << procs_same << "/" << procs;
  v.require(procs_same == procs, "process runs identical");
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<void(Verdict&)> run;
};

const std::vector<Criterion> kCriteria{
    {1, "monomial norms", 1.0, monomial_norms},
    {2, "compression identity", 5.0, compression},
    {3, "reproducing property", 5.0, reproducing},
    {4, "weight formulas", 10.0, weights},
    {5, "norm gap", 60.0, norm_gap},
    {6, "specific value", 1.0, specific_value},
    {7, "cesaro boundedness", 120.0, cesaro},
    {8, "peak function", 60.0, peak},
    {9, "singularity/Henkin certificates", 10.0, certificates},
    {10, "extremal/exposed", 10.0, extremal},
    {11, "valskii", 120.0, valskii},
    {12, "sup-norm-on-K", 120.0, supk},
    {13, "determinism", 10.0, determinism},
};

bool run_one(const Criterion& c) {
  Verdict v;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    c.run(v);
  } catch (const std::exception& e) {
    v.pass = false;
    v.detail << " [exception: " << e.what() << "]";
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  v.require(secs < c.budget_s, "time budget " + g17(c.budget_s) + " s");
  std::printf("criterion %d (%s): %s  time=%.3fs budget=%.0fs  %s\n", c.id, c.name, v.pass ? "PASS" : "FAIL", secs,
              c.budget_s, v.detail.str().c_str());
  std::fflush(stdout);
  return v.pass;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--cli" && i + 1 < argc) {
      exe_path = argv[++i];
    } else if (a == "all") {
      for (const auto& c : kCriteria) ids.push_back(c.id);
    } else {
      ids.push_back(std::atoi(a.c_str()));
    }
  }
  if (ids.empty())
    for (const auto& c : kCriteria) ids.push_back(c.id);
  int failed = 0;
  for (int id : ids) {
    const auto it = std::find_if(kCriteria.begin(), kCriteria.end(), [&](const Criterion& c) { return c.id == id; });
    if (it == kCriteria.end()) {
      std::printf("criterion %d: FAIL  unknown criterion\n", id);
      ++failed;
      continue;
    }
    failed += !run_one(*it);
  }
  return failed;
}
