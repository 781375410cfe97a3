#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "elmkit/pbpoly.hpp"
#include "elmkit/rational.hpp"

namespace elmkit {

struct EnumerationOptions {
  std::size_t workers = 0;          ///< 0: default_workers()
  std::size_t max_variables = 28;   ///< refuse larger instances
  std::size_t ground_state_limit = 64;
  std::uint64_t min_chunk = 1u << 12; ///< smallest range handed to a worker
};

/// Polynomial flattened to bitmask form for evaluation on packed
/// assignments (bit i of the state = variable i).
class CompiledPolynomial {
public:
  /// Throws DomainError if `p` uses a variable >= num_vars, OverflowError if
  /// the sum of absolute coefficients does not fit in 64 bits (which makes
  /// every evaluation overflow-free).
  CompiledPolynomial(const BinaryPolynomial &p, std::size_t num_vars);

  std::int64_t operator()(std::uint64_t state) const noexcept {
    std::int64_t e = constant_;
    for (std::size_t t = 0; t < masks_.size(); ++t)
      if ((state & masks_[t]) == masks_[t])
        e += coefficients_[t];
    return e;
  }

  std::size_t num_vars() const noexcept { return num_vars_; }

private:
  std::size_t num_vars_;
  std::int64_t constant_ = 0;
  std::vector<std::uint64_t> masks_;
  std::vector<std::int64_t> coefficients_;
};

struct Level {
  std::int64_t energy;
  std::uint64_t count;

  friend bool operator==(const Level &, const Level &) = default;
};

/// Exact density of states of a Hamiltonian over all 2^n assignments.
struct SpectrumReport {
  std::size_t n = 0;
  std::vector<Level> levels;                 ///< strictly increasing energy
  std::vector<std::uint64_t> ground_states;  ///< lowest indices first, capped
  std::uint64_t total_ground_states = 0;
  std::optional<std::int64_t> e_gap;         ///< unset for a flat landscape
  std::int64_t e_width = 0;
  std::optional<Rational> ratio;             ///< e_width^2 / e_gap^3
  std::vector<std::string> notes;

  std::int64_t ground_energy() const { return levels.front().energy; }
  std::int64_t max_energy() const { return levels.back().energy; }
  /// Ratio rounded half-up.
  std::optional<std::int64_t> ratio_display() const;
  bool ground_states_truncated() const {
    return ground_states.size() < total_ground_states;
  }

  friend bool operator==(const SpectrumReport &, const SpectrumReport &) = default;
};

/// Histograms the energy of every assignment. Work is split into
/// contiguous index ranges with per-range histograms merged by energy, so
/// the report does not depend on the worker count.
/// Throws CapExceeded when num_vars exceeds options.max_variables.
SpectrumReport enumerate_spectrum(const BinaryPolynomial &h, std::size_t num_vars,
                                  const EnumerationOptions &options = {});

/// Builds the derived statistics from a complete histogram.
SpectrumReport make_report(std::size_t n, std::vector<Level> levels,
                           std::vector<std::uint64_t> ground_states,
                           std::uint64_t total_ground_states);

/// e_width^2 / e_gap^3 exactly. Throws DomainError unless e_gap >= 1.
Rational spectral_ratio(std::int64_t e_width, std::int64_t e_gap);

struct LevelShift {
  std::size_t k;                   ///< level index, 0 = ground
  std::optional<Level> a;
  std::optional<Level> b;
  std::optional<std::int64_t> shift;  ///< b.energy - a.energy
};

struct SpectrumComparison {
  std::optional<Rational> factor;  ///< ratio_a / ratio_b
  std::optional<double> percent;   ///< factor * 100
  std::vector<LevelShift> shifts;
  /// Unset when a capped ground-state list makes the answer unknown.
  std::optional<bool> same_ground_states;
};

SpectrumComparison compare_spectra(const SpectrumReport &a, const SpectrumReport &b,
                                   std::size_t levels = 5);

/// Character i is the value of variable i.
std::string bitstring(std::uint64_t state, std::size_t n);
Assignment unpack(std::uint64_t state, std::size_t n);

} // namespace elmkit
