// Copyright 2026 The dalab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "dalab/multop/sphere.hpp"

namespace dalab::cli {

inline constexpr int kSchemaVersion = 1;
inline constexpr int kMaxTruncation = 96;

enum ExitCode : int { kOk = 0, kInputError = 1, kNumericalError = 2 };

/// Parsed command line. Fields not used by a subcommand keep their defaults;
/// negative integers mean "choose from the input".
struct RunConfig {
  std::string subcommand;
  int d = 0;
  std::string poly;
  std::string json_path;
  int truncation = -1;  // --N
  int n_max = -1;
  double tol = 1e-9;
  std::uint64_t seed = kDefaultSeed;
  std::string format = "json";
  std::string out_path;

  std::size_t samples = 0;  // 0 selects the subcommand default
  std::string zeta = "1,0";
  std::string list;  // --n-list / --r
  int terms = 30;    // --M
  double cap = 0.05;
  int circle = 0;
  bool attach_norm = true;
  int k_max = 8, m_max = 50, j_max = 20;
  int stirling_k = 64, stirling_m = 1000;
  std::string g = "z2";
  std::string f = "0.5 + 0.5*z1";
  int slack = 16;
  std::string mode = "singular";
  std::string lambda = "1";
  std::string w = "0.3,0.4";
  int n1 = 20;
  int mc_degree = 6;
  std::size_t cases = 50;
};

/// Parses `args` (args[0] is the program name) and runs the subcommand.
/// The report goes to `out` (or --out); diagnostics to `err`. Returns 0 on
/// success, 1 on bad input, 2 on numerical failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Runs an already parsed configuration; same output and exit contract.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// "a,b:c,..." -> points; each entry is a real or re:im.
Point parse_point(const std::string& text);

}  // namespace dalab::cli
