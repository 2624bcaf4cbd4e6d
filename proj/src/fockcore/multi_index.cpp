// Copyright 2026 The dalab Authors
// SPDX-License-Identifier: Apache-2.0

#include "dalab/fockcore/multi_index.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "dalab/error.hpp"

namespace dalab {

MultiIndex::MultiIndex(std::vector<int> exponents) : exps_(std::move(exponents)) {
  if (exps_.empty()) throw InvalidArgument("multi-index needs dimension >= 1");
  for (int e : exps_) {
    if (e < 0) throw InvalidArgument("multi-index exponents must be non-negative");
    degree_ += e;
  }
}

MultiIndex MultiIndex::zero(int d) {
  if (d < 1) throw InvalidArgument("invalid dimension " + std::to_string(d));
  return MultiIndex(std::vector<int>(static_cast<std::size_t>(d), 0));
}

MultiIndex MultiIndex::unit(int d, int i) {
  if (i < 0 || i >= d) throw InvalidArgument("coordinate out of range");
  std::vector<int> e(static_cast<std::size_t>(d), 0);
  e[static_cast<std::size_t>(i)] = 1;
  return MultiIndex(std::move(e));
}

bool MultiIndex::divides(const MultiIndex& other) const {
  if (other.dim() != dim()) return false;
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] > other.exps_[i]) return false;
  return true;
}

MultiIndex MultiIndex::operator+(const MultiIndex& o) const {
  if (o.dim() != dim()) throw InvalidArgument("multi-index dimension mismatch");
  std::vector<int> e(exps_);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] += o.exps_[i];
  return MultiIndex(std::move(e));
}

MultiIndex MultiIndex::operator-(const MultiIndex& o) const {
  if (!o.divides(*this)) throw InvalidArgument("multi-index subtraction out of range");
  std::vector<int> e(exps_);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] -= o.exps_[i];
  return MultiIndex(std::move(e));
}

int MultiIndex::support_size() const {
  return static_cast<int>(std::count_if(exps_.begin(), exps_.end(), [](int e) { return e != 0; }));
}

std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b) {
  if (auto c = a.dim() <=> b.dim(); c != 0) return c;
  if (auto c = a.degree_ <=> b.degree_; c != 0) return c;
  // Descending lex inside a degree.
  for (std::size_t i = 0; i < a.exps_.size(); ++i)
    if (a.exps_[i] != b.exps_[i]) return b.exps_[i] <=> a.exps_[i];
  return std::strong_ordering::equal;
}

std::string MultiIndex::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < exps_.size(); ++i) os << (i ? "," : "") << exps_[i];
  os << ')';
  return os.str();
}

std::size_t MultiIndexHash::operator()(const MultiIndex& a) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  for (int e : a.exponents()) h ^= static_cast<std::size_t>(e) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

namespace {

void enum_rec(int d, int k, std::vector<int>& prefix, std::vector<MultiIndex>& out) {
  if (static_cast<int>(prefix.size()) == d - 1) {
    prefix.push_back(k);
    out.emplace_back(prefix);
    prefix.pop_back();
    return;
  }
  for (int a = k; a >= 0; --a) {
    prefix.push_back(a);
    enum_rec(d, k - a, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<MultiIndex> enum_multiindices(int d, int k) {
  if (d < 1) throw InvalidArgument("invalid dimension " + std::to_string(d));
  if (k < 0) throw InvalidArgument("negative degree");
  std::vector<MultiIndex> out;
  out.reserve(count_multiindices(d, k));
  std::vector<int> prefix;
  prefix.reserve(static_cast<std::size_t>(d));
  enum_rec(d, k, prefix, out);
  return out;
}

std::size_t count_multiindices(int d, int k) {
  if (d < 1 || k < 0) return 0;
  return binomial(static_cast<unsigned>(k + d - 1), static_cast<unsigned>(d - 1)).convert_to<std::size_t>();
}

Integer multinomial(const MultiIndex& alpha) {
  Integer r = 1;
  unsigned partial = 0;
  for (int e : alpha.exponents()) {
    partial += static_cast<unsigned>(e);
    r *= binomial(partial, static_cast<unsigned>(e));
  }
  return r;
}

Rational monomial_norm_sq(const MultiIndex& alpha) { return Rational(Integer(1), multinomial(alpha)); }

double monomial_norm_sq_double(const MultiIndex& alpha) {
  double r = 1.0;
  unsigned partial = 0;
  for (int e : alpha.exponents()) {
    partial += static_cast<unsigned>(e);
    r /= binomial_double(partial, static_cast<unsigned>(e));
  }
  return r;
}

GradedBasis::GradedBasis(int d, int max_degree) : d_(d), max_degree_(max_degree) {
  if (d < 1) throw InvalidArgument("invalid dimension " + std::to_string(d));
  if (max_degree < 0) throw InvalidArgument("negative degree bound");
  offsets_.push_back(0);
  for (int k = 0; k <= max_degree; ++k) {
    auto level = enum_multiindices(d, k);
    for (auto& a : level) {
      positions_.emplace(a, indices_.size());
      indices_.push_back(std::move(a));
    }
    offsets_.push_back(indices_.size());
  }
}

std::size_t GradedBasis::position(const MultiIndex& alpha) const {
  auto it = positions_.find(alpha);
  if (it == positions_.end()) throw InvalidArgument("multi-index " + alpha.to_string() + " outside basis");
  return it->second;
}

bool GradedBasis::contains(const MultiIndex& alpha) const { return positions_.count(alpha) != 0; }

}  // namespace dalab
