#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "elmkit/deduction.hpp"
#include "elmkit/pbpoly.hpp"

namespace elmkit {

/// lhs = rhs over binary variables.
struct Equation {
  BinaryPolynomial lhs;
  BinaryPolynomial rhs;

  BinaryPolynomial residual() const { return lhs - rhs; }

  /// Moves every negative-coefficient term to the opposite side.
  Equation normalized() const;
  bool is_normalized() const;

  /// Splits a residual into its positive part (lhs) and the negation of its
  /// negative part (rhs).
  static Equation from_residual(const BinaryPolynomial &residual);

  friend bool operator==(const Equation &, const Equation &) = default;
};

/// Ordered list of equations plus the variable table they index into.
/// Equation order is significant (weights are positional).
class EquationSystem {
public:
  EquationSystem() = default;
  /// Throws DomainError if an equation references an index outside `vars`.
  EquationSystem(VariableTable vars, std::vector<Equation> equations);

  const VariableTable &variables() const noexcept { return vars_; }
  const std::vector<Equation> &equations() const noexcept { return equations_; }
  std::size_t size() const noexcept { return equations_.size(); }
  bool empty() const noexcept { return equations_.empty(); }

  /// Same system with indices reassigned in natural name order.
  EquationSystem canonical() const;

  bool satisfied_by(const Assignment &x) const;

  friend bool operator==(const EquationSystem &, const EquationSystem &) = default;

private:
  VariableTable vars_;
  std::vector<Equation> equations_;
};

/// Binary long-multiplication encoding of N = p * q.
///
/// Bits p_0, p_{p_bits-1}, q_0, q_{q_bits-1} are fixed to 1; the others are
/// variables p<i>, q<i>. Column c collects every p_i*q_j with i + j = c plus
/// incoming carries, and equals bit c of N plus 2^k * z_{c,c+k} for just
/// enough outgoing carries z<c><c+k> to cover the column's maximum sum.
struct FactoringInstance {
  std::uint64_t n = 0;
  unsigned p_bits = 0;
  unsigned q_bits = 0;
  EquationSystem system;

  /// Reads p and q back out of a full assignment of `system`'s variables.
  std::pair<std::uint64_t, std::uint64_t> decode(const Assignment &x) const;
  /// Same, for an assignment over another table that names the bits.
  std::pair<std::uint64_t, std::uint64_t>
  decode(const Assignment &x, const VariableTable &vars) const;
};

FactoringInstance generate_factoring_system(std::uint64_t n, unsigned p_bits,
                                            unsigned q_bits);

/// Output of apply_simple_deductions. `deductions` are expressed over the
/// input system's variable table, in the order they were applied; each
/// one is a relation "variable == constant" or "variable == variable".
struct Reduction {
  EquationSystem system;
  VariableTable original;
  std::vector<Deduction> deductions;

  /// Lifts a solution of the reduced system to the input system.
  Assignment expand(const Assignment &reduced) const;
};

/// Applies, to a fixed point, only these rules:
///   a sum of non-negative terms equal to 0 forces each variable term to 0;
///   a sum equal to its maximum forces every term to 1;
///   an equation in a single variable fixes that variable;
///   x = y substitutes the later variable by the earlier one.
/// Throws Contradiction if an equation becomes unsatisfiable.
Reduction apply_simple_deductions(const EquationSystem &system);

/// Every solution, by depth-first search over variable indices with
/// interval pruning on each residual. Stops after `limit` solutions.
std::vector<Assignment> solve_exhaustive(const EquationSystem &system,
                                         std::size_t limit = SIZE_MAX);

/// sum_i weight_i * (lhs_i - rhs_i)^2; all weights 1 when omitted.
/// Throws DomainError on a non-positive weight or a length mismatch.
BinaryPolynomial
system_to_hamiltonian(const EquationSystem &system,
                      std::optional<std::span<const std::int64_t>> weights = {});

/// Equation file: one "<poly> = <poly>" per line, '#' comments, blank lines
/// ignored. Variables are indexed in natural order.
EquationSystem parse_system(std::string_view text);
EquationSystem load_system(const std::string &path);
std::string format_system(const EquationSystem &system);
void save_system(const EquationSystem &system, const std::string &path);

} // namespace elmkit
