// Copyright 2026 The dalab Authors
// SPDX-License-Identifier: Apache-2.0

#include "dalab/fockcore/poly_io.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "dalab/error.hpp"

namespace dalab {

namespace {

class Parser {
 public:
  Parser(std::string_view s, int d) : s_(s), d_(d) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("polynomial parse error at offset " + std::to_string(pos_) + ": " + msg);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  Polynomial checked(Polynomial p) const {
    if (p.degree() > kMaxParsedDegree) throw ParseError("expansion exceeds total degree 64");
    return p;
  }

  Polynomial expr() {
    Polynomial acc(d_);
    bool first = true;
    while (true) {
      double sign = 1.0;
      if (accept('+')) {
      } else if (accept('-')) {
        sign = -1.0;
      } else if (!first) {
        break;
      }
      acc += term() * cplx{sign, 0.0};
      first = false;
    }
    return acc;
  }

  Polynomial term() {
    Polynomial acc = factor();
    while (true) {
      if (accept('*')) {
        acc = checked(acc * factor());
      } else if (accept('/')) {
        Polynomial div = factor();
        if (div.degree() > 0) fail("division by a non-constant");
        const cplx c = div.coeff(MultiIndex::zero(d_));
        if (c == cplx{0.0, 0.0}) fail("division by zero");
        acc = acc * (cplx{1.0, 0.0} / c);
      } else {
        break;
      }
    }
    return acc;
  }

  Polynomial factor() {
    Polynomial base = primary();
    if (accept('^')) {
      const long n = integer();
      if (n > kMaxParsedDegree && base.degree() > 0) throw ParseError("expansion exceeds total degree 64");
      if (base.degree() > 0 && base.degree() * n > kMaxParsedDegree)
        throw ParseError("expansion exceeds total degree 64");
      base = checked(base.pow(static_cast<int>(n)));
    }
    return base;
  }

  Polynomial primary() {
    const char c = peek();
    if (c == '(') {
      const std::size_t save = pos_;
      ++pos_;
      if (auto z = try_complex_literal()) return Polynomial::constant(d_, *z);
      pos_ = save + 1;
      Polynomial inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (c == 'z' || c == 'Z') {
      ++pos_;
      const long idx = integer();
      if (idx < 1 || idx > d_)
        throw ParseError("variable z" + std::to_string(idx) + " outside dimension " + std::to_string(d_));
      return Polynomial::coordinate(d_, static_cast<int>(idx) - 1);
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return Polynomial::constant(d_, cplx{number(), 0.0});
    fail(c == '\0' ? "unexpected end of input" : std::string("unexpected '") + c + "'");
  }

  std::optional<cplx> try_complex_literal() {
    const std::size_t save = pos_;
    auto re = try_signed_number();
    if (!re) {
      pos_ = save;
      return std::nullopt;
    }
    double im = 0.0;
    if (accept(',')) {
      auto v = try_signed_number();
      if (!v) fail("expected imaginary part");
      im = *v;
    }
    if (!accept(')')) {
      pos_ = save;
      return std::nullopt;
    }
    return cplx{*re, im};
  }

  std::optional<double> try_signed_number() {
    skip_ws();
    const std::size_t start = pos_;
    if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
    skip_ws();
    if (pos_ >= s_.size() || !(std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) {
      pos_ = start;
      return std::nullopt;
    }
    const bool neg = s_[start] == '-';
    const double v = number();
    return neg ? -v : v;
  }

  double number() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      std::size_t q = pos_ + 1;
      if (q < s_.size() && (s_[q] == '+' || s_[q] == '-')) ++q;
      if (q < s_.size() && std::isdigit(static_cast<unsigned char>(s_[q]))) {
        pos_ = q;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      }
    }
    const std::string tok(s_.substr(start, pos_ - start));
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (tok.empty() || end != tok.c_str() + tok.size()) fail("malformed number '" + tok + "'");
    return v;
  }

  long integer() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    long v = 0;
    auto [ptr, ec] = std::from_chars(s_.data() + start, s_.data() + pos_, v);
    if (ec != std::errc{}) fail("integer out of range");
    return v;
  }

  std::string_view s_;
  int d_;
  std::size_t pos_ = 0;
};

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Polynomial parse_polynomial(std::string_view text, int d) {
  if (d < 1) throw InvalidArgument("invalid dimension " + std::to_string(d));
  return Parser(text, d).parse();
}

int infer_dimension(std::string_view text) {
  int best = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != 'z' && text[i] != 'Z') continue;
    std::size_t j = i + 1;
    int v = 0;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) v = v * 10 + (text[j++] - '0');
    best = std::max(best, v);
  }
  return best;
}

std::string to_text(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [a, c] : p.terms()) {
    if (!first) os << " + ";
    first = false;
    os << '(' << format_double(c.real()) << ',' << format_double(c.imag()) << ')';
    for (int i = 0; i < a.dim(); ++i) {
      if (a[i] == 0) continue;
      os << "*z" << (i + 1);
      if (a[i] > 1) os << '^' << a[i];
    }
  }
  return os.str();
}

nlohmann::json polynomial_to_json(const Polynomial& p) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [a, c] : p.terms()) {
    nlohmann::json alpha = nlohmann::json::array();
    for (int e : a.exponents()) alpha.push_back(e);
    terms.push_back({{"alpha", alpha}, {"re", c.real()}, {"im", c.imag()}});
  }
  nlohmann::json j = {{"d", p.dim()}, {"terms", terms}};
  if (p.truncation()) j["truncation"] = *p.truncation();
  return j;
}

Polynomial polynomial_from_json(const nlohmann::json& j) {
  try {
    const int d = j.at("d").get<int>();
    std::optional<int> trunc;
    if (j.contains("truncation")) trunc = j.at("truncation").get<int>();
    Polynomial p(d, trunc);
    for (const auto& t : j.at("terms")) {
      auto alpha = t.at("alpha").get<std::vector<int>>();
      if (static_cast<int>(alpha.size()) != d) throw ParseError("term exponent length differs from d");
      const double re = t.value("re", 0.0);
      const double im = t.value("im", 0.0);
      p.add_term(MultiIndex(std::move(alpha)), cplx{re, im});
    }
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("polynomial JSON: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("polynomial JSON: ") + e.what());
  }
}

}  // namespace dalab
