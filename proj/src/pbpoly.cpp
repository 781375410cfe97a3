#include "elmkit/pbpoly.hpp"

#include <algorithm>
#include <cstdlib>

#include "elmkit/checked.hpp"
#include "elmkit/error.hpp"

namespace elmkit {

namespace {

Monomial merge(const Monomial &a, const Monomial &b) {
  Monomial out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

} // namespace

BinaryPolynomial BinaryPolynomial::constant(std::int64_t value) {
  return term(value, {});
}

BinaryPolynomial BinaryPolynomial::variable(VarIndex index) {
  return term(1, {index});
}

BinaryPolynomial BinaryPolynomial::term(std::int64_t coefficient, Monomial vars) {
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  BinaryPolynomial p;
  p.accumulate(vars, coefficient);
  return p;
}

bool BinaryPolynomial::is_constant() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

std::int64_t BinaryPolynomial::constant_term() const noexcept {
  if (terms_.empty() || !terms_.begin()->first.empty())
    return 0;
  return terms_.begin()->second;
}

std::size_t BinaryPolynomial::degree() const noexcept {
  return terms_.empty() ? 0 : terms_.rbegin()->first.size();
}

std::vector<VarIndex> BinaryPolynomial::variables() const {
  std::vector<VarIndex> out;
  for (const auto &[m, c] : terms_)
    out.insert(out.end(), m.begin(), m.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<VarIndex> BinaryPolynomial::max_variable() const {
  std::optional<VarIndex> best;
  for (const auto &[m, c] : terms_)
    if (!m.empty() && (!best || m.back() > *best))
      best = m.back();
  return best;
}

std::int64_t BinaryPolynomial::evaluate(const Assignment &x,
                                        const VariableTable *names) const {
  std::int64_t total = 0;
  for (const auto &[m, c] : terms_) {
    bool on = true;
    for (VarIndex v : m) {
      if (v >= x.size()) {
        std::string label = names && v < names->size()
                                ? "'" + names->name(v) + "'"
                                : "index " + std::to_string(v);
        throw DomainError("assignment does not cover variable " + label);
      }
      on = on && x[v];
    }
    if (on)
      total = checked_add(total, c, "polynomial evaluation");
  }
  return total;
}

BinaryPolynomial
BinaryPolynomial::substitute(VarIndex index,
                             const BinaryPolynomial &replacement) const {
  BinaryPolynomial kept, touched;
  for (const auto &[m, c] : terms_) {
    if (!std::binary_search(m.begin(), m.end(), index)) {
      kept.accumulate(m, c);
      continue;
    }
    Monomial rest;
    rest.reserve(m.size() - 1);
    std::copy_if(m.begin(), m.end(), std::back_inserter(rest),
                 [index](VarIndex v) { return v != index; });
    touched.accumulate(rest, c);
  }
  return kept + touched * replacement;
}

BinaryPolynomial BinaryPolynomial::remap(
    std::span<const std::optional<VarIndex>> old_to_new) const {
  BinaryPolynomial out;
  for (const auto &[m, c] : terms_) {
    Monomial renamed;
    renamed.reserve(m.size());
    for (VarIndex v : m) {
      if (v >= old_to_new.size() || !old_to_new[v])
        throw DomainError("remap drops variable index " + std::to_string(v) +
                          " that is still in use");
      renamed.push_back(*old_to_new[v]);
    }
    std::sort(renamed.begin(), renamed.end());
    renamed.erase(std::unique(renamed.begin(), renamed.end()), renamed.end());
    out.accumulate(renamed, c);
  }
  return out;
}

BinaryPolynomial BinaryPolynomial::operator-() const {
  BinaryPolynomial out;
  for (const auto &[m, c] : terms_)
    out.terms_.emplace(m, checked_sub(0, c, "negation"));
  return out;
}

BinaryPolynomial &BinaryPolynomial::operator+=(const BinaryPolynomial &other) {
  for (const auto &[m, c] : other.terms_)
    accumulate(m, c);
  return *this;
}

BinaryPolynomial &BinaryPolynomial::operator-=(const BinaryPolynomial &other) {
  for (const auto &[m, c] : other.terms_)
    accumulate(m, checked_sub(0, c, "subtraction"));
  return *this;
}

BinaryPolynomial operator*(const BinaryPolynomial &a, const BinaryPolynomial &b) {
  BinaryPolynomial out;
  for (const auto &[ma, ca] : a.terms_)
    for (const auto &[mb, cb] : b.terms_)
      out.accumulate(merge(ma, mb), checked_mul(ca, cb, "polynomial product"));
  return out;
}

BinaryPolynomial operator*(std::int64_t scale, const BinaryPolynomial &p) {
  BinaryPolynomial out;
  if (scale == 0)
    return out;
  for (const auto &[m, c] : p.terms_)
    out.terms_.emplace(m, checked_mul(scale, c, "scaling"));
  return out;
}

void BinaryPolynomial::accumulate(const Monomial &m, std::int64_t coefficient) {
  if (coefficient == 0)
    return;
  auto [it, inserted] = terms_.try_emplace(m, coefficient);
  if (inserted)
    return;
  it->second = checked_add(it->second, coefficient, "polynomial addition");
  if (it->second == 0)
    terms_.erase(it);
}

BinaryPolynomial add(const BinaryPolynomial &p, const BinaryPolynomial &q) {
  return p + q;
}

BinaryPolynomial multiply(const BinaryPolynomial &p, const BinaryPolynomial &q) {
  return p * q;
}

BinaryPolynomial square(const BinaryPolynomial &p) { return p * p; }

std::string format_polynomial(const BinaryPolynomial &p,
                              const VariableTable &vars) {
  if (p.is_zero())
    return "0";
  std::string out;
  auto emit = [&](const Monomial &m, std::int64_t c) {
    bool negative = c < 0;
    // magnitude as unsigned so INT64_MIN prints correctly
    std::uint64_t mag = negative ? 0 - static_cast<std::uint64_t>(c)
                                 : static_cast<std::uint64_t>(c);
    if (out.empty())
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    std::string body;
    if (m.empty() || mag != 1)
      body = std::to_string(mag);
    for (VarIndex v : m) {
      if (!body.empty())
        body += "*";
      body += v < vars.size() ? vars.name(v) : "v" + std::to_string(v);
    }
    out += body;
  };
  for (const auto &[m, c] : p.terms())
    if (!m.empty())
      emit(m, c);
  if (auto c = p.constant_term(); c != 0)
    emit({}, c);
  return out;
}

} // namespace elmkit
