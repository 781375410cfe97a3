#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "elmkit/variables.hpp"

namespace elmkit {

/// Sorted set of distinct variable indices. The empty monomial is the
/// constant 1.
using Monomial = std::vector<VarIndex>;

/// Orders monomials by degree, then lexicographically.
struct MonomialOrder {
  bool operator()(const Monomial &a, const Monomial &b) const {
    if (a.size() != b.size())
      return a.size() < b.size();
    return a < b;
  }
};

/// One value per variable index of an instance.
using Assignment = std::vector<bool>;

/// Multilinear polynomial over {0,1}-valued variables with exact 64-bit
/// integer coefficients.
///
/// Values are kept canonical: monomials never repeat a variable (x*x = x)
/// and zero coefficients are never stored, so structural equality coincides
/// with equality as functions on {0,1}^n. Every operation detects overflow
/// and throws OverflowError instead of wrapping.
class BinaryPolynomial {
public:
  using TermMap = std::map<Monomial, std::int64_t, MonomialOrder>;

  BinaryPolynomial() = default;

  static BinaryPolynomial constant(std::int64_t value);
  static BinaryPolynomial variable(VarIndex index);
  /// coefficient * product of `vars`; repeated indices collapse.
  static BinaryPolynomial term(std::int64_t coefficient, Monomial vars);

  const TermMap &terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  std::int64_t constant_term() const noexcept;
  std::size_t degree() const noexcept;

  /// Distinct variable indices in increasing order.
  std::vector<VarIndex> variables() const;
  std::optional<VarIndex> max_variable() const;

  /// Exact value at `x`. Throws DomainError if `x` does not cover a
  /// variable; the message names it when `names` is given.
  std::int64_t evaluate(const Assignment &x,
                        const VariableTable *names = nullptr) const;

  /// Replaces variable `index` by `replacement` everywhere.
  BinaryPolynomial substitute(VarIndex index,
                              const BinaryPolynomial &replacement) const;

  /// Renames every variable through `old_to_new`. Throws DomainError if a
  /// variable in use maps to std::nullopt or lies outside the map.
  BinaryPolynomial
  remap(std::span<const std::optional<VarIndex>> old_to_new) const;

  BinaryPolynomial operator-() const;
  BinaryPolynomial &operator+=(const BinaryPolynomial &other);
  BinaryPolynomial &operator-=(const BinaryPolynomial &other);

  friend BinaryPolynomial operator+(BinaryPolynomial a,
                                    const BinaryPolynomial &b) {
    a += b;
    return a;
  }
  friend BinaryPolynomial operator-(BinaryPolynomial a,
                                    const BinaryPolynomial &b) {
    a -= b;
    return a;
  }
  friend BinaryPolynomial operator*(const BinaryPolynomial &a,
                                    const BinaryPolynomial &b);
  friend BinaryPolynomial operator*(std::int64_t scale,
                                    const BinaryPolynomial &p);

  friend bool operator==(const BinaryPolynomial &,
                         const BinaryPolynomial &) = default;

private:
  void accumulate(const Monomial &m, std::int64_t coefficient);

  TermMap terms_;
};

BinaryPolynomial add(const BinaryPolynomial &p, const BinaryPolynomial &q);
BinaryPolynomial multiply(const BinaryPolynomial &p, const BinaryPolynomial &q);
BinaryPolynomial square(const BinaryPolynomial &p);

/// Parses the polynomial grammar
///   poly   := ['+'|'-'] term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := identifier | integer
/// interning identifiers into `vars` in order of appearance.
BinaryPolynomial parse_polynomial(std::string_view text, VariableTable &vars);

/// Canonical text: terms by degree then variable index, constant last,
/// unit coefficients omitted. The zero polynomial prints as "0".
std::string format_polynomial(const BinaryPolynomial &p,
                              const VariableTable &vars);

} // namespace elmkit
