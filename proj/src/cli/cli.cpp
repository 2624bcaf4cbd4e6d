// Copyright 2026 The dalab Authors
// SPDX-License-Identifier: Apache-2.0

#include "dalab/cli/cli.hpp"

#include <omp.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "dalab/cauchy/cauchy.hpp"
#include "dalab/error.hpp"
#include "dalab/fockcore/full_fock.hpp"
#include "dalab/fockcore/poly_io.hpp"
#include "dalab/functionals/functionals.hpp"
#include "dalab/json_format.hpp"
#include "dalab/multop/norms.hpp"
#include "dalab/peaklab/peaklab.hpp"
#include "dalab/shiftlab/shiftlab.hpp"

namespace dalab::cli {

namespace {

using nlohmann::json;

struct Report {
  json body;
  std::string csv;  // empty when the subcommand has no CSV form
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(text);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  return out;
}

double parse_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ParseError("not a number: '" + s + "'");
  }
  while (used < s.size() && std::isspace(static_cast<unsigned char>(s[used]))) ++used;
  if (used != s.size()) throw ParseError("not a number: '" + s + "'");
  return v;
}

int parse_int(const std::string& s) {
  const double v = parse_double(s);
  if (v != std::floor(v) || std::abs(v) > 1e9) throw ParseError("not an integer: '" + s + "'");
  return static_cast<int>(v);
}

cplx parse_complex(const std::string& s) {
  const auto parts = split(s, ':');
  if (parts.size() == 1) return {parse_double(parts[0]), 0.0};
  if (parts.size() == 2) return {parse_double(parts[0]), parse_double(parts[1])};
  throw ParseError("complex entries are written re or re:im, got '" + s + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

json read_json(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw ParseError("invalid JSON in '" + path + "': " + e.what());
  }
}

Polynomial polynomial_input(const std::string& text, int d) {
  const int dim = d > 0 ? d : infer_dimension(text);
  return parse_polynomial(text, dim);
}

Polynomial main_polynomial(const RunConfig& c) {
  if (!c.json_path.empty()) {
    Polynomial p = polynomial_from_json(read_json(c.json_path));
    if (c.d > 0 && p.dim() != c.d) throw InvalidArgument("--d differs from the dimension in the JSON input");
    return p;
  }
  if (c.poly.empty()) throw ParseError("this subcommand needs --poly or --json");
  return polynomial_input(c.poly, c.d);
}

void check_truncation(int n, const char* what) {
  if (n > kMaxTruncation)
    throw InvalidArgument(std::string(what) + " " + std::to_string(n) + " exceeds the cap " +
                          std::to_string(kMaxTruncation));
}

int default_sweep_bound(const RunConfig& c, const Polynomial& p) {
  const int n = c.n_max >= 0 ? c.n_max : std::max(p.degree(), 0) + 8;
  check_truncation(n, "--n-max");
  return n;
}

SphereSampling sampling(const RunConfig& c) {
  SphereSampling s;
  s.seed = c.seed;
  if (c.samples > 0) s.n_samples = c.samples;
  return s;
}

json point_json(const Point& z) {
  json out = json::array();
  for (const auto& v : z) out.push_back({v.real(), v.imag()});
  return out;
}

json cplx_json(cplx v) { return json::array({v.real(), v.imag()}); }

// ---- subcommands

Report cmd_norm(const RunConfig& c) {
  const Polynomial p = main_polynomial(c);
  const NormEstimate est = multiplier_norm(p, default_sweep_bound(c, p), c.tol);
  Report r{to_json(est), {}};
  r.body["degree"] = p.degree();
  std::ostringstream os;
  os << "N,norm\n";
  for (const auto& [n, v] : est.sweep) os << n << ',' << format_float(v) << '\n';
  r.csv = os.str();
  return r;
}

Report cmd_gap(const RunConfig& c) {
  const Polynomial p = main_polynomial(c);
  const GapReport g = norm_gap_report(p, default_sweep_bound(c, p), sampling(c), c.tol);
  Report r{to_json(g), {}};
  r.csv = "mult_norm,sup_norm,ratio,n_samples,degree,converged\n" + format_float(g.mult_norm) + ',' +
          format_float(g.sup_norm) + ',' + format_float(g.ratio) + ',' + std::to_string(g.n_samples) + ',' +
          std::to_string(g.degree) + ',' + (g.converged ? "true" : "false") + '\n';
  return r;
}

Report cmd_cesaro(const RunConfig& c) {
  std::vector<int> ns;
  const std::string list = c.list.empty() ? "1,2,4,8,16,32,64" : c.list;
  if (list != "none")
    for (const auto& s : split(list, ',')) {
      const int n = parse_int(s);
      if (5 * n > 4 * kMaxTruncation) throw InvalidArgument("Cesaro length " + s + " exceeds the cap");
      ns.push_back(n);
    }
  const auto table = cesaro_sweep(ns);
  return {to_json(table), to_csv(table)};
}

Report cmd_weights(const RunConfig& c) {
  const MonotonicityReport mono = weight_monotonicity_check(c.k_max, c.m_max, c.j_max);
  const StirlingMax st = stirling_grid_max(c.stirling_k, c.stirling_m);
  json viol = json::array();
  for (const auto& v : mono.violations) viol.push_back({{"k", v.k}, {"m", v.m}, {"j", v.j}, {"kind", v.kind}});
  json alpha = json::array();
  for (int k = 1; k <= c.k_max; ++k)
    for (int m = 0; m <= std::min(c.m_max, 10); ++m) {
      const Weight w = alpha_weight(k, m);
      alpha.push_back({{"k", k}, {"m", m}, {"squared", w.squared.str()}, {"value", w.value}});
    }
  json body{{"monotonicity",
             {{"k_max", c.k_max}, {"m_max", c.m_max}, {"j_max", c.j_max}, {"pass", mono.pass},
              {"checked", mono.checked}, {"violations", viol}}},
            {"stirling", {{"k_max", c.stirling_k}, {"m_max", c.stirling_m}, {"max_ratio", st.value},
                          {"argmax_k", st.k}, {"argmax_m", st.m}}},
            {"alpha", alpha}};
  std::ostringstream os;
  os << "k,m,j,beta_squared,beta\n";
  const WeightTable t = weight_table(c.k_max, c.m_max, c.j_max);
  for (int k = 1; k <= c.k_max; ++k)
    for (int m = 0; m <= c.m_max; ++m)
      for (int j = 0; j <= c.j_max; ++j) {
        const Rational& q = t.at(k, m, j);
        os << k << ',' << m << ',' << j << ',' << q.str() << ',' << format_float(std::sqrt(to_double(q))) << '\n';
      }
  return {body, os.str()};
}

Report cmd_peak(const RunConfig& c) {
  PeakGrid grid;
  grid.seed = c.seed;
  grid.n_points = c.samples > 0 ? c.samples : 10000;
  grid.exclusion_radius = c.cap;
  grid.attach_norm = c.attach_norm;
  grid.norm_n_max = c.n_max;
  grid.tol = c.tol;
  if (c.n_max >= 0) check_truncation(c.n_max, "--n-max");
  PeakSpec spec;
  Polynomial p(2);
  json target;
  if (c.circle > 0) {
    spec = PeakSpec::circle();
    p = circle_peak(c.circle);
    target = {{"kind", "balanced_circle"}, {"n", c.circle}};
  } else {
    spec = PeakSpec::point(parse_point(c.zeta), c.terms);
    p = peak_polynomial(spec);
    target = {{"kind", "point"},
              {"zeta", point_json(std::get<PointTarget>(spec.target).zeta)},
              {"terms", spec.terms},
              {"tail_bound", spec.tail_bound()},
              {"expected_on_target", 1.0 - spec.tail_bound()}};
  }
  const PeakReport rep = peak_verify(p, spec, grid);
  Report r{to_json(rep), peak_grid_csv(p, spec, grid)};
  r.body["target"] = target;
  r.body["degree"] = p.degree();
  return r;
}

Report cmd_supk(const RunConfig& c) {
  const int d = c.d > 0 ? c.d : 2;
  const Polynomial g = parse_polynomial(c.g, d);
  const Polynomial f = parse_polynomial(c.f, d);
  const Point k = parse_point(c.zeta);
  const int n_max = c.n_max >= 0 ? c.n_max : 32;
  check_truncation(std::max(g.degree(), 0) + n_max * std::max(f.degree(), 0) + c.slack, "supk truncation");
  const SupKTable t = supnorm_on_K_powers(g, f, k, n_max, SupKOptions{c.slack, c.tol});
  Report r{to_json(t), to_csv(t)};
  r.body["zeta"] = point_json(k);
  return r;
}

Report cmd_witness(const RunConfig& c) {
  const int n_max = c.n_max >= 0 ? c.n_max : 20;
  check_truncation(n_max, "--n-max");
  std::optional<Functional> given;
  if (!c.json_path.empty()) given = functional_from_json(read_json(c.json_path));
  if (c.mode == "singular") {
    AtomicMeasure m;
    if (given) {
      if (!std::holds_alternative<AtomicMeasure>(*given)) throw InvalidArgument("singular mode needs an atomic functional");
      m = std::get<AtomicMeasure>(*given);
    } else {
      Point z = parse_point(c.zeta);
      m.d = static_cast<int>(z.size());
      m.atoms.push_back({parse_complex(c.lambda), std::move(z)});
    }
    const auto rows = singular_witness(m, n_max, c.tol);
    Report r{to_json(rows), to_csv(rows)};
    r.body["mode"] = "singular";
    r.body["functional"] = functional_to_json(Functional{m});
    return r;
  }
  if (c.mode != "henkin") throw ParseError("--mode must be singular or henkin");
  if (given && !std::holds_alternative<VectorPair>(*given))
    throw InvalidArgument("henkin mode needs a vector functional");
  if (!given) check_truncation(c.n1 + n_max, "--n1 + --n-max");
  const VectorPair v = given ? std::get<VectorPair>(*given) : kernel_pair(parse_point(c.w), c.n1, n_max);
  Point zeta(static_cast<std::size_t>(v.xi.dim()), cplx{0.0, 0.0});
  zeta[0] = 1.0;
  const DecayTable t = henkin_decay(v, zeta, n_max);
  Report r{to_json(t), to_csv(t)};
  r.body["mode"] = "henkin";
  r.body["functional"] = functional_to_json(Functional{v});
  return r;
}

Report cmd_expose(const RunConfig& c) {
  const Polynomial f = main_polynomial(c);
  const int n = c.truncation >= 0 ? c.truncation : 12;
  check_truncation(n, "--N");
  const ExtremalResult ext = extremal_subspace(f, n, c.tol, sampling(c));
  json body{{"extremal", to_json(ext)}};
  if (!ext.vectors.empty()) {
    const VectorPair phi = exposed_functional(f, ext.vectors.front(), std::max(c.tol, 1e-9));
    const NormBounds b = functional_norm_bounds(Functional{phi});
    body["exposed"] = functional_to_json(Functional{phi});
    body["value_on_f"] = cplx_json(eval_functional(phi, f));
    body["bounds"] = to_json(b);
  } else {
    body["exposed"] = nullptr;
    body["value_on_f"] = nullptr;
    body["bounds"] = nullptr;
  }
  return {body, {}};
}

Report cmd_valskii(const RunConfig& c) {
  const int d = c.d > 0 ? c.d : 2;
  const int n = c.truncation >= 0 ? c.truncation : 16;
  check_truncation(n, "--N");
  std::vector<double> radii;
  for (const auto& s : split(c.list.empty() ? "0.9,0.99,0.999" : c.list, ',')) radii.push_back(parse_double(s));

  struct Named {
    std::string name;
    VectorPair phi;
  };
  std::vector<Named> phis;
  if (!c.json_path.empty()) {
    const Functional given = functional_from_json(read_json(c.json_path));
    if (!std::holds_alternative<VectorPair>(given)) throw InvalidArgument("valskii needs a vector functional");
    phis.push_back({"input", std::get<VectorPair>(given)});
  } else {
    auto poly = [&](const char* t) { return parse_polynomial(t, d); };
    phis.push_back({"[1, 1*]", {poly("1"), poly("1")}});
    phis.push_back({"[1, z1*]", {poly("1"), poly("z1")}});
    phis.push_back({"[z1, (z1*z2)*]", {poly("z1"), poly("z1*z2")}});
    phis.push_back({"[1 + z2, (z1 + z2^2)*]", {poly("1 + z2"), poly("z1 + z2^2")}});
  }
  const std::vector<std::string> fs = {"1", "z1", "z2", "z1*z2", "z2^2 + (0,1)*z1"};

  json rows = json::array();
  std::ostringstream os;
  os << "functional,f,r,psi_re,psi_im,phi_re,phi_im,error,tail_bound\n";
  for (const auto& ph : phis)
    for (const auto& ft : fs) {
      if (d < 2 && ft.find("z2") != std::string::npos) continue;
      const Polynomial fp = parse_polynomial(ft, ph.phi.xi.dim());
      const cplx exact = eval_functional(ph.phi, fp);
      for (double r : radii) {
        const auto v = valskii_approximant(ph.phi, r, fp, n, c.tol);
        const double e = std::abs(v.value - exact);
        rows.push_back({{"functional", ph.name},
                        {"f", ft},
                        {"r", r},
                        {"psi", cplx_json(v.value)},
                        {"phi", cplx_json(exact)},
                        {"error", e},
                        {"tail_bound", v.tail_bound}});
        os << '"' << ph.name << "\"," << '"' << ft << "\"," << format_float(r) << ',' << format_float(v.value.real())
           << ',' << format_float(v.value.imag()) << ',' << format_float(exact.real()) << ','
           << format_float(exact.imag()) << ',' << format_float(e) << ',' << format_float(v.tail_bound) << '\n';
      }
    }
  json body{{"rows", rows}, {"truncation", n}};
  if (c.samples > 0) body["sigma_validation"] = to_json(validate_sigma_integrals(d, c.mc_degree, c.samples, c.seed));
  return {body, os.str()};
}

Report cmd_fock_check(const RunConfig& c) {
  const int d = c.d > 0 ? c.d : 2;
  const int n = c.truncation >= 0 ? c.truncation : 4;
  if (n < 1) throw InvalidArgument("fock-check needs --N >= 1");
  json comp = json::array();
  double worst = 0.0;
  std::size_t mismatches = 0;
  for (int k = 1; k <= d; ++k) {
    const CompressionReport rep = compression_check(d, k, n);
    worst = std::max(worst, rep.max_deviation);
    mismatches += rep.mismatches;
    comp.push_back({{"letter", k},
                    {"entries_compared", rep.entries_compared},
                    {"mismatches", rep.mismatches},
                    {"max_deviation", rep.max_deviation}});
  }
  const ReproducingReport repro = reproducing_check(d, n, c.cases, c.seed);
  json body{{"d", d},
            {"N", n},
            {"compression", comp},
            {"deviation", worst},
            {"mismatches", mismatches},
            {"reproducing", {{"cases", repro.cases}, {"matches", repro.matches}, {"failures", repro.failures}}}};
  std::ostringstream os;
  os << "letter,entries_compared,mismatches,max_deviation\n";
  for (const auto& row : comp)
    os << row["letter"].get<int>() << ',' << row["entries_compared"].get<std::size_t>() << ','
       << row["mismatches"].get<std::size_t>() << ',' << format_float(row["max_deviation"].get<double>()) << '\n';
  return {body, os.str()};
}

const std::vector<std::pair<std::string, std::function<Report(const RunConfig&)>>>& commands() {
  static const std::vector<std::pair<std::string, std::function<Report(const RunConfig&)>>> table = {
      {"norm", cmd_norm},       {"gap", cmd_gap},         {"cesaro", cmd_cesaro},   {"weights", cmd_weights},
      {"peak", cmd_peak},       {"supk", cmd_supk},       {"witness", cmd_witness}, {"expose", cmd_expose},
      {"valskii", cmd_valskii}, {"fock-check", cmd_fock_check}};
  return table;
}

void apply_thread_cap(std::ostream& err) {
  const char* env = std::getenv("DA_LAB_THREADS");
  if (!env || !*env) return;
  char* end = nullptr;
  const long n = std::strtol(env, &end, 10);
  if (*end != '\0' || n < 1) {
    err << "warning: ignoring DA_LAB_THREADS='" << env << "'\n";
    return;
  }
  omp_set_num_threads(static_cast<int>(n));
}

}  // namespace

Point parse_point(const std::string& text) {
  Point z;
  for (const auto& s : split(text, ',')) z.push_back(parse_complex(s));
  if (z.empty()) throw ParseError("empty point");
  // Accept targets typed with a few digits, e.g. 0.6,0.8 or 0.7071,0.7071.
  const double n = euclidean_norm(z);
  if (std::abs(n - 1.0) < 1e-3 && n > 0.0)
    for (auto& v : z) v /= n;
  return z;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (!(cfg.tol > 0.0)) throw InvalidArgument("--tol must be positive");
    if (cfg.format != "json" && cfg.format != "csv") throw ParseError("--format must be json or csv");
    const auto& table = commands();
    auto it = std::find_if(table.begin(), table.end(), [&](const auto& e) { return e.first == cfg.subcommand; });
    if (it == table.end()) throw ParseError("unknown subcommand '" + cfg.subcommand + "'");
    Report rep = it->second(cfg);

    std::string text;
    if (cfg.format == "csv") {
      if (rep.csv.empty()) throw InvalidArgument("subcommand '" + cfg.subcommand + "' has no CSV form");
      text = rep.csv;
    } else {
      json body = rep.body;
      body["command"] = cfg.subcommand;
      body["schema_version"] = kSchemaVersion;
      text = dump_json(body) + "\n";
    }
    if (cfg.out_path.empty()) {
      out << text;
    } else {
      std::ofstream f(cfg.out_path, std::ios::binary);
      if (!f) throw ParseError("cannot write '" + cfg.out_path + "'");
      f << text;
    }
    return kOk;
  } catch (const NumericalFailure& e) {
    err << "numerical failure: " << e.what() << '\n';
    if (!e.trace().empty()) {
      err << "last iterates:";
      for (double v : e.trace()) err << ' ' << format_float(v);
      err << '\n';
    }
    return kNumericalError;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kNumericalError;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Drury-Arveson multiplier laboratory", args.empty() ? "dalab" : args.front()};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  auto common = [&](CLI::App* s) {
    s->add_option("--d", cfg.d, "ambient dimension (inferred from --poly when omitted)");
    s->add_option("--seed", cfg.seed, "seed for sampled grids and random suites");
    s->add_option("--format", cfg.format, "json or csv");
    s->add_option("--out", cfg.out_path, "write the report to this file");
    s->add_option("--tol", cfg.tol, "tolerance for iterative solvers");
  };
  auto poly_input = [&](CLI::App* s) {
    s->add_option("--poly", cfg.poly, "polynomial in text form, e.g. \"2*z1*z2 + 0.5*z1^3\"");
    s->add_option("--json", cfg.json_path, "read the input from a JSON file");
  };

  auto* norm = app.add_subcommand("norm", "multiplier norm by truncation sweep");
  common(norm);
  poly_input(norm);
  norm->add_option("--n-max", cfg.n_max, "sweep bound (default deg p + 8)");

  auto* gap = app.add_subcommand("gap", "multiplier norm against sampled sup norm");
  common(gap);
  poly_input(gap);
  gap->add_option("--n-max", cfg.n_max, "sweep bound (default deg p + 8)");
  gap->add_option("--samples", cfg.samples, "sphere sample count (default 20000)");

  auto* ces = app.add_subcommand("cesaro", "Cesaro means of (2 z1 z2)^k on the balanced chain");
  common(ces);
  ces->add_option("--n-list", cfg.list, "comma-separated n values, or none");

  auto* wts = app.add_subcommand("weights", "exact weighted-shift weights and their checks");
  common(wts);
  wts->add_option("--k-max", cfg.k_max);
  wts->add_option("--m-max", cfg.m_max);
  wts->add_option("--j-max", cfg.j_max);
  wts->add_option("--stirling-k", cfg.stirling_k);
  wts->add_option("--stirling-m", cfg.stirling_m);

  auto* peak = app.add_subcommand("peak", "peak polynomial at a point, or h_n on the balanced circle");
  common(peak);
  peak->add_option("--zeta", cfg.zeta, "target point, entries re or re:im");
  peak->add_option("--M", cfg.terms, "number of series terms");
  peak->add_option("--samples", cfg.samples, "grid size (default 10000)");
  peak->add_option("--cap", cfg.cap, "exclusion radius around the target");
  peak->add_option("--circle", cfg.circle, "use h_n for this n instead of a point target");
  peak->add_option("--n-max", cfg.n_max, "sweep bound for the attached multiplier norm");
  peak->add_flag("!--no-norm", cfg.attach_norm, "skip the multiplier norm");

  auto* supk = app.add_subcommand("supk", "upper bounds for inf ||g h|| over the convex hull of powers of f");
  common(supk);
  supk->add_option("--g", cfg.g);
  supk->add_option("--f", cfg.f);
  supk->add_option("--zeta", cfg.zeta);
  supk->add_option("--n-max", cfg.n_max, "largest averaging length (default 32)");
  supk->add_option("--slack", cfg.slack, "truncation beyond deg(g h)");

  auto* wit = app.add_subcommand("witness", "singular or Henkin certificates");
  common(wit);
  wit->add_option("--mode", cfg.mode, "singular or henkin");
  wit->add_option("--json", cfg.json_path, "functional JSON");
  wit->add_option("--lambda", cfg.lambda, "atom weight, re or re:im");
  wit->add_option("--zeta", cfg.zeta, "atom point");
  wit->add_option("--w", cfg.w, "kernel point for the default vector functional");
  wit->add_option("--n1", cfg.n1, "kernel truncation of xi");
  wit->add_option("--n-max", cfg.n_max, "largest power (default 20)");

  auto* exp = app.add_subcommand("expose", "extremal subspace and exposed functional");
  common(exp);
  poly_input(exp);
  exp->add_option("--N", cfg.truncation, "truncation degree (default 12)");
  exp->add_option("--samples", cfg.samples, "sphere samples for the sup-norm precondition");

  auto* val = app.add_subcommand("valskii", "Cauchy-kernel approximants on a battery");
  common(val);
  val->add_option("--json", cfg.json_path, "vector functional JSON replacing the battery");
  val->add_option("--r", cfg.list, "comma-separated radii");
  val->add_option("--N", cfg.truncation, "kernel expansion degree (default 16)");
  val->add_option("--samples", cfg.samples, "Monte Carlo samples for the sphere-moment check (0 skips)");
  val->add_option("--mc-degree", cfg.mc_degree);

  auto* fock = app.add_subcommand("fock-check", "compression identity and reproducing property");
  common(fock);
  fock->add_option("--N", cfg.truncation, "length bound (default 4)");
  fock->add_option("--cases", cfg.cases, "random reproducing-property cases");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty()) rev.pop_back();  // program name
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  for (auto* s : app.get_subcommands()) cfg.subcommand = s->get_name();
  apply_thread_cap(err);
  return run(cfg, out, err);
}

}  // namespace dalab::cli
