#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "elmkit/deduction.hpp"
#include "elmkit/factoring.hpp"
#include "elmkit/pbpoly.hpp"
#include "elmkit/spectrum.hpp"

namespace elmkit {

/// H + sum of deduction penalties. Validity of each deduction is the
/// caller's claim; check it with verify_ground_state_preserved.
BinaryPolynomial deduc_elm(const BinaryPolynomial &h,
                           const std::vector<Deduction> &deductions);

/// How the largest squared residual of an equation is bounded.
enum class EnergyMode {
  /// max(S_L, S_R)^2 with S the sum of all coefficients on a side.
  side_max,
  /// max(S_L - c_R, S_R - c_L)^2 with c the constant term on a side.
  diff_max,
};

struct EquationEnergy {
  std::int64_t value = 0;  ///< upper bound on (lhs - rhs)^2
  std::int64_t lhs_candidate = 0;
  std::int64_t rhs_candidate = 0;
  /// False when a variable occurs on both sides, in which case the bound
  /// is still valid but may not be attained.
  bool disjoint_sides = true;
};

/// Upper bound on an equation's squared residual over all assignments.
/// Negative terms are moved across first. With `require_disjoint`, a
/// variable shared between the sides raises DomainError pointing at
/// exact_max_equation_energy.
EquationEnergy max_equation_energy(const Equation &e, EnergyMode mode,
                                   bool require_disjoint = false);

/// Brute-force maximum of (lhs - rhs)^2 over the equation's own variables.
std::int64_t exact_max_equation_energy(const Equation &e);

enum class SchemeKind {
  ceil_ratio,  ///< ceil(E_max / E_i)
  indicator,   ///< 1 where E_i = E_max, else 2
  uniform,     ///< all 1
};

struct EquationWeight {
  std::int64_t max_energy;
  std::int64_t lambda;
};

struct WeightScheme {
  SchemeKind kind = SchemeKind::uniform;
  EnergyMode mode = EnergyMode::side_max;
  std::vector<EquationWeight> per_equation;
  std::int64_t e_max = 0;

  std::vector<std::int64_t> lambdas() const;
};

/// Per-equation maximum energies and the weights the scheme derives from
/// them. Throws DomainError on an empty system.
WeightScheme plan_weights(const EquationSystem &system, SchemeKind kind,
                          EnergyMode mode = EnergyMode::side_max);

/// sum_i lambda_i * residual_i^2 with the scheme's lambdas.
BinaryPolynomial multiplicity_elm(const EquationSystem &system,
                                  const WeightScheme &scheme);

struct PreservationResult {
  bool preserved = true;
  /// An assignment that is a ground state of exactly one of the two.
  std::optional<std::uint64_t> witness;
  std::int64_t ground_energy_before = 0;
  std::int64_t ground_energy_after = 0;
  std::uint64_t ground_states = 0;
};

/// Exhaustively checks argmin(h) == argmin(h_prime) over 2^num_vars states.
/// Throws CapExceeded beyond options.max_variables (default 24 here).
PreservationResult verify_ground_state_preserved(const BinaryPolynomial &h,
                                                 const BinaryPolynomial &h_prime,
                                                 std::size_t num_vars,
                                                 EnumerationOptions options = {
                                                     0, 24, 64, 1u << 12});

/// As above, first requiring both Hamiltonians to share a variable table.
PreservationResult verify_ground_state_preserved(
    const BinaryPolynomial &h, const VariableTable &vars,
    const BinaryPolynomial &h_prime, const VariableTable &vars_prime,
    EnumerationOptions options = {0, 24, 64, 1u << 12});

std::string to_string(EnergyMode mode);
std::string to_string(SchemeKind kind);
EnergyMode parse_energy_mode(const std::string &text);
SchemeKind parse_scheme_kind(const std::string &text);

} // namespace elmkit
