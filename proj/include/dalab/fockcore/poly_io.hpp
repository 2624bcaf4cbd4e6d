// Copyright 2026 The dalab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>

#include "json.hpp"

#include "dalab/fockcore/series.hpp"

namespace dalab {

inline constexpr int kMaxParsedDegree = 64;

/// Parses the polynomial text format, e.g. "2*z1*z2 + 0.5*z1^3",
/// "(0,1)*z2", "(z1*z2)^2", "(1+z1)/2". Coefficients are real decimals or
/// "(re,im)" pairs; parenthesized sub-expressions may be raised to integer
/// powers and are expanded. Variables must satisfy 1 <= index <= d.
/// Throws ParseError on malformed input or total degree above 64.
Polynomial parse_polynomial(std::string_view text, int d);

/// Largest variable index that appears in the text (0 if none).
int infer_dimension(std::string_view text);

/// Canonical text rendering, readable back by parse_polynomial.
std::string to_text(const Polynomial& p);

/// {"d": int, "terms": [{"alpha": [...], "re": x, "im": y}, ...]}; terms in
/// graded-lex order. A truncated series also carries "truncation".
nlohmann::json polynomial_to_json(const Polynomial& p);
Polynomial polynomial_from_json(const nlohmann::json& j);

}  // namespace dalab
