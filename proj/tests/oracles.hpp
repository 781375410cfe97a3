#pragma once

// Test-only reference implementations. These deliberately avoid the
// library's packed-state evaluator so they can check it.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "elmkit/factoring.hpp"
#include "elmkit/pbpoly.hpp"
#include "elmkit/spectrum.hpp"

namespace elmkit::testing {

inline Assignment nth_assignment(std::uint64_t index, std::size_t n) {
  Assignment x(n);
  for (std::size_t i = 0; i < n; ++i)
    x[i] = (index >> i) & 1;
  return x;
}

/// Single-threaded histogram that re-evaluates the polynomial term by term.
struct NaiveSpectrum {
  std::map<std::int64_t, std::uint64_t> histogram;
  std::vector<std::uint64_t> ground_states;  // every one, in index order
};

inline NaiveSpectrum naive_spectrum(const BinaryPolynomial &h, std::size_t n) {
  NaiveSpectrum out;
  std::vector<std::int64_t> energies(std::size_t{1} << n);
  for (std::uint64_t i = 0; i < energies.size(); ++i) {
    Assignment x = nth_assignment(i, n);
    std::int64_t e = 0;
    for (const auto &[m, c] : h.terms()) {
      bool on = true;
      for (VarIndex v : m)
        on = on && x[v];
      if (on)
        e += c;
    }
    energies[i] = e;
    ++out.histogram[e];
  }
  const std::int64_t lowest = out.histogram.begin()->first;
  for (std::uint64_t i = 0; i < energies.size(); ++i)
    if (energies[i] == lowest)
      out.ground_states.push_back(i);
  return out;
}

/// Every assignment index satisfying all equations, by direct evaluation.
inline std::vector<std::uint64_t> brute_force_solutions(const EquationSystem &sys) {
  const std::size_t n = sys.variables().size();
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 0; i < (std::uint64_t{1} << n); ++i)
    if (sys.satisfied_by(nth_assignment(i, n)))
      out.push_back(i);
  return out;
}

inline std::uint64_t pack(const Assignment &x) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i])
      v |= std::uint64_t{1} << i;
  return v;
}

/// Random multilinear polynomial over n variables with small coefficients.
inline BinaryPolynomial random_polynomial(std::mt19937_64 &rng, std::size_t n,
                                          std::size_t max_terms, int max_coef,
                                          std::size_t max_degree = 3) {
  std::uniform_int_distribution<std::size_t> terms(0, max_terms);
  std::uniform_int_distribution<std::size_t> degree(0, std::min(max_degree, n));
  std::uniform_int_distribution<VarIndex> var(0, static_cast<VarIndex>(n ? n - 1 : 0));
  std::uniform_int_distribution<int> coef(-max_coef, max_coef);
  BinaryPolynomial p;
  for (std::size_t t = terms(rng); t > 0; --t) {
    Monomial m;
    for (std::size_t d = n ? degree(rng) : 0; d > 0; --d)
      m.push_back(var(rng));
    p += BinaryPolynomial::term(coef(rng), std::move(m));
  }
  return p;
}

inline VariableTable numbered_table(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i)
    names.push_back("x" + std::to_string(i));
  return VariableTable::from_names(names);
}

/// Random equation system with a planted solution, so it is satisfiable.
/// Both sides keep non-negative coefficients.
inline EquationSystem random_satisfiable_system(std::mt19937_64 &rng, std::size_t n,
                                                std::size_t equations) {
  VariableTable vars = numbered_table(n);
  Assignment planted = nth_assignment(rng(), n);
  std::vector<Equation> eqs;
  for (std::size_t k = 0; k < equations; ++k) {
    Equation e = Equation::from_residual(random_polynomial(rng, n, 4, 3, 2));
    std::int64_t gap = e.lhs.evaluate(planted) - e.rhs.evaluate(planted);
    if (gap > 0)
      e.rhs += BinaryPolynomial::constant(gap);
    else if (gap < 0)
      e.lhs += BinaryPolynomial::constant(-gap);
    eqs.push_back(std::move(e));
  }
  return EquationSystem(std::move(vars), std::move(eqs));
}

} // namespace elmkit::testing
