#include "elmkit/elm.hpp"

#include <algorithm>
#include <limits>

#include "elmkit/checked.hpp"
#include "elmkit/error.hpp"
#include "elmkit/parallel.hpp"

namespace elmkit {

BinaryPolynomial deduc_elm(const BinaryPolynomial &h,
                           const std::vector<Deduction> &deductions) {
  BinaryPolynomial out = h;
  for (const auto &d : deductions) {
    if (d.weight() <= 0)
      throw DomainError("deduction weight must be positive");
    out += d.penalty();
  }
  return out;
}

EquationEnergy max_equation_energy(const Equation &e, EnergyMode mode,
                                   bool require_disjoint) {
  const Equation n = e.normalized();
  auto lv = n.lhs.variables(), rv = n.rhs.variables();
  std::vector<VarIndex> shared;
  std::set_intersection(lv.begin(), lv.end(), rv.begin(), rv.end(),
                        std::back_inserter(shared));
  EquationEnergy out;
  out.disjoint_sides = shared.empty();
  if (require_disjoint && !out.disjoint_sides)
    throw DomainError("variable index " + std::to_string(shared.front()) +
                      " appears on both sides; the closed-form maximum may not be "
                      "attained, use exact_max_equation_energy (brute force)");

  auto total = [](const BinaryPolynomial &p) {
    std::int64_t s = 0;
    for (const auto &[m, c] : p.terms())
      s = checked_add(s, c, "equation energy");
    return s;
  };
  const std::int64_t sum_l = total(n.lhs), sum_r = total(n.rhs);
  if (mode == EnergyMode::side_max) {
    out.lhs_candidate = sum_l;
    out.rhs_candidate = sum_r;
  } else {
    out.lhs_candidate = checked_sub(sum_l, n.rhs.constant_term(), "equation energy");
    out.rhs_candidate = checked_sub(sum_r, n.lhs.constant_term(), "equation energy");
  }
  std::int64_t best = std::max(out.lhs_candidate, out.rhs_candidate);
  out.value = checked_mul(best, best, "equation energy");
  return out;
}

std::int64_t exact_max_equation_energy(const Equation &e) {
  const BinaryPolynomial r = e.residual();
  const auto vars = r.variables();
  if (vars.size() > 30)
    throw CapExceeded("equation has too many variables for brute force");
  std::vector<std::optional<VarIndex>> map(vars.empty() ? 0 : vars.back() + 1);
  for (VarIndex i = 0; i < vars.size(); ++i)
    map[vars[i]] = i;
  const CompiledPolynomial compiled(r.remap(map), vars.size());
  std::int64_t best = 0;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << vars.size()); ++x) {
    std::int64_t v = compiled(x);
    best = std::max(best, checked_mul(v, v, "equation energy"));
  }
  return best;
}

std::vector<std::int64_t> WeightScheme::lambdas() const {
  std::vector<std::int64_t> out;
  out.reserve(per_equation.size());
  for (const auto &w : per_equation)
    out.push_back(w.lambda);
  return out;
}

WeightScheme plan_weights(const EquationSystem &system, SchemeKind kind,
                          EnergyMode mode) {
  if (system.empty())
    throw DomainError("cannot plan weights for an empty system");
  WeightScheme scheme;
  scheme.kind = kind;
  scheme.mode = mode;
  for (const auto &e : system.equations()) {
    std::int64_t energy = max_equation_energy(e, mode).value;
    scheme.per_equation.push_back({energy, 1});
    scheme.e_max = std::max(scheme.e_max, energy);
  }
  for (auto &w : scheme.per_equation) {
    switch (kind) {
    case SchemeKind::ceil_ratio:
      // an equation that can never be violated gets the neutral weight
      w.lambda = w.max_energy == 0
                     ? 1
                     : (scheme.e_max + w.max_energy - 1) / w.max_energy;
      break;
    case SchemeKind::indicator:
      w.lambda = w.max_energy == scheme.e_max ? 1 : 2;
      break;
    case SchemeKind::uniform:
      w.lambda = 1;
      break;
    }
  }
  return scheme;
}

BinaryPolynomial multiplicity_elm(const EquationSystem &system,
                                  const WeightScheme &scheme) {
  if (scheme.per_equation.size() != system.size())
    throw DomainError("weight scheme has " +
                      std::to_string(scheme.per_equation.size()) +
                      " entries for a system of " + std::to_string(system.size()) +
                      " equations");
  auto lambdas = scheme.lambdas();
  return system_to_hamiltonian(system, std::span<const std::int64_t>(lambdas));
}

PreservationResult verify_ground_state_preserved(const BinaryPolynomial &h,
                                                 const BinaryPolynomial &h_prime,
                                                 std::size_t num_vars,
                                                 EnumerationOptions options) {
  if (num_vars > options.max_variables)
    throw CapExceeded(std::to_string(num_vars) +
                      " variables exceed the exhaustive verification cap of " +
                      std::to_string(options.max_variables));
  const CompiledPolynomial before(h, num_vars), after(h_prime, num_vars);
  const std::uint64_t total = std::uint64_t{1} << num_vars;
  const std::size_t workers = options.workers ? options.workers : default_workers();
  constexpr auto kMax = std::numeric_limits<std::int64_t>::max();

  std::vector<std::pair<std::int64_t, std::int64_t>> minima(workers, {kMax, kMax});
  std::size_t used = for_each_range(
      total, workers, options.min_chunk,
      [&](std::uint64_t begin, std::uint64_t end, std::size_t slot) {
        auto &[a, b] = minima[slot];
        for (std::uint64_t x = begin; x < end; ++x) {
          a = std::min(a, before(x));
          b = std::min(b, after(x));
        }
      });
  PreservationResult result;
  result.ground_energy_before = kMax;
  result.ground_energy_after = kMax;
  for (std::size_t s = 0; s < used; ++s) {
    result.ground_energy_before = std::min(result.ground_energy_before, minima[s].first);
    result.ground_energy_after = std::min(result.ground_energy_after, minima[s].second);
  }

  struct Scan {
    std::optional<std::uint64_t> witness;
    std::uint64_t ground = 0;
  };
  std::vector<Scan> scans(workers);
  for_each_range(total, workers, options.min_chunk,
                 [&](std::uint64_t begin, std::uint64_t end, std::size_t slot) {
                   Scan &scan = scans[slot];
                   for (std::uint64_t x = begin; x < end; ++x) {
                     bool g1 = before(x) == result.ground_energy_before;
                     bool g2 = after(x) == result.ground_energy_after;
                     if (g1 != g2 && !scan.witness)
                       scan.witness = x;
                     scan.ground += g1 ? 1 : 0;
                   }
                 });
  for (std::size_t s = 0; s < used; ++s) {
    result.ground_states += scans[s].ground;
    if (!result.witness && scans[s].witness)
      result.witness = scans[s].witness;
  }
  result.preserved = !result.witness.has_value();
  return result;
}

PreservationResult verify_ground_state_preserved(const BinaryPolynomial &h,
                                                 const VariableTable &vars,
                                                 const BinaryPolynomial &h_prime,
                                                 const VariableTable &vars_prime,
                                                 EnumerationOptions options) {
  if (!(vars == vars_prime))
    throw DomainError("Hamiltonians are defined over different variable tables");
  return verify_ground_state_preserved(h, h_prime, vars.size(), options);
}

std::string to_string(EnergyMode mode) {
  return mode == EnergyMode::side_max ? "side_max" : "diff_max";
}

std::string to_string(SchemeKind kind) {
  switch (kind) {
  case SchemeKind::ceil_ratio:
    return "ceil_ratio";
  case SchemeKind::indicator:
    return "indicator";
  case SchemeKind::uniform:
    break;
  }
  return "uniform";
}

EnergyMode parse_energy_mode(const std::string &text) {
  if (text == "side" || text == "side_max")
    return EnergyMode::side_max;
  if (text == "diff" || text == "diff_max")
    return EnergyMode::diff_max;
  throw DomainError("unknown energy mode '" + text + "' (expected side or diff)");
}

SchemeKind parse_scheme_kind(const std::string &text) {
  if (text == "ceil" || text == "ceil_ratio")
    return SchemeKind::ceil_ratio;
  if (text == "indicator")
    return SchemeKind::indicator;
  if (text == "uniform")
    return SchemeKind::uniform;
  throw DomainError("unknown weight scheme '" + text +
                    "' (expected ceil, indicator or uniform)");
}

} // namespace elmkit
