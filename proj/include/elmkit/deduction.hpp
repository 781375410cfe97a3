#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "elmkit/pbpoly.hpp"

namespace elmkit {

/// "variable takes value": one forced consequence of an implication.
struct Consequence {
  VarIndex variable;
  bool value;

  friend bool operator==(const Consequence &, const Consequence &) = default;
};

/// A fact that holds at every ground state, usable as a penalty.
///
/// A relation f = g contributes weight * (f - g)^2. An implication
/// "trigger = 1 forces each consequence" contributes
/// weight * trigger * sum_j [consequence j violated], which for all-ones
/// consequences reads weight * v * (k - w_1 - ... - w_k).
class Deduction {
public:
  enum class Kind { relation, implication };

  static Deduction relation(BinaryPolynomial f, BinaryPolynomial g,
                            std::int64_t weight = 1);
  static Deduction implication(VarIndex trigger,
                               std::vector<Consequence> consequences,
                               std::int64_t weight = 1);

  Kind kind() const noexcept { return kind_; }
  const BinaryPolynomial &lhs() const noexcept { return lhs_; }
  const BinaryPolynomial &rhs() const noexcept { return rhs_; }
  VarIndex trigger() const noexcept { return trigger_; }
  const std::vector<Consequence> &consequences() const noexcept {
    return consequences_;
  }
  std::int64_t weight() const noexcept { return weight_; }

  Deduction with_weight(std::int64_t weight) const;

  /// Non-negative penalty polynomial, zero exactly where the deduction holds.
  BinaryPolynomial penalty() const;
  bool satisfied_by(const Assignment &x) const;
  std::vector<VarIndex> variables() const;

  friend bool operator==(const Deduction &, const Deduction &) = default;

private:
  Deduction() = default;

  Kind kind_ = Kind::relation;
  BinaryPolynomial lhs_;
  BinaryPolynomial rhs_;
  VarIndex trigger_ = 0;
  std::vector<Consequence> consequences_;
  std::int64_t weight_ = 1;
};

/// One line of the deduction file format:
///   relation: <poly> == <poly> [lambda=<int>]
///   imply: <var> -> <var>=<0|1>, ... [lambda=<int>]
/// The brackets around the weight are optional. Names must already exist
/// in `vars`.
Deduction parse_deduction(std::string_view line, const VariableTable &vars);
std::string format_deduction(const Deduction &d, const VariableTable &vars);

/// Whole file: blank lines and '#' comments ignored. Errors carry line
/// numbers.
std::vector<Deduction> parse_deductions(std::string_view text,
                                        const VariableTable &vars);
std::vector<Deduction> load_deductions(const std::string &path,
                                       const VariableTable &vars);
std::string format_deductions(const std::vector<Deduction> &ds,
                              const VariableTable &vars);

/// Human-readable penalty, e.g. "z24*(3 - p1 - p2 - q2)" or
/// "2*(x0*x1 - x0)^2".
std::string describe_penalty(const Deduction &d, const VariableTable &vars);

} // namespace elmkit
