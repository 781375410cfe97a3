#include "elmkit/spectrum.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>

#include "elmkit/checked.hpp"
#include "elmkit/error.hpp"
#include "elmkit/parallel.hpp"

namespace elmkit {

namespace {

constexpr std::size_t kHardVariableLimit = 62;

struct Partial {
  std::unordered_map<std::int64_t, std::uint64_t> histogram;
  std::int64_t min_energy = std::numeric_limits<std::int64_t>::max();
  std::uint64_t min_count = 0;
  std::vector<std::uint64_t> min_states;
};

} // namespace

CompiledPolynomial::CompiledPolynomial(const BinaryPolynomial &p,
                                       std::size_t num_vars)
    : num_vars_(num_vars) {
  if (num_vars > kHardVariableLimit)
    throw CapExceeded("cannot pack " + std::to_string(num_vars) +
                      " variables into a 64-bit state");
  std::int64_t magnitude = 0;
  for (const auto &[m, c] : p.terms()) {
    magnitude = checked_add(magnitude, c < 0 ? checked_sub(0, c) : c,
                            "energy bound");
    if (m.empty()) {
      constant_ = c;
      continue;
    }
    std::uint64_t mask = 0;
    for (VarIndex v : m) {
      if (v >= num_vars)
        throw DomainError("polynomial uses variable index " + std::to_string(v) +
                          " but only " + std::to_string(num_vars) +
                          " variables are enumerated");
      mask |= std::uint64_t{1} << v;
    }
    masks_.push_back(mask);
    coefficients_.push_back(c);
  }
}

std::optional<std::int64_t> SpectrumReport::ratio_display() const {
  if (!ratio)
    return std::nullopt;
  return ratio->round_half_up();
}

Rational spectral_ratio(std::int64_t e_width, std::int64_t e_gap) {
  if (e_gap < 1)
    throw DomainError("spectral ratio needs a positive gap, got " +
                      std::to_string(e_gap));
  std::int64_t width2 = checked_mul(e_width, e_width, "spectral ratio");
  std::int64_t gap3 = checked_mul(checked_mul(e_gap, e_gap, "spectral ratio"), e_gap,
                                  "spectral ratio");
  return Rational(width2, gap3);
}

SpectrumReport make_report(std::size_t n, std::vector<Level> levels,
                           std::vector<std::uint64_t> ground_states,
                           std::uint64_t total_ground_states) {
  SpectrumReport r;
  r.n = n;
  r.levels = std::move(levels);
  r.ground_states = std::move(ground_states);
  r.total_ground_states = total_ground_states;
  r.e_width = checked_sub(r.max_energy(), r.ground_energy(), "spectral width");
  if (r.levels.size() > 1) {
    r.e_gap = checked_sub(r.levels[1].energy, r.levels[0].energy, "spectral gap");
    r.ratio = spectral_ratio(r.e_width, *r.e_gap);
  } else {
    r.notes.push_back("flat spectrum: single level, e_gap undefined");
  }
  if (r.ground_states_truncated())
    r.notes.push_back("ground_states truncated to " +
                      std::to_string(r.ground_states.size()) + " of " +
                      std::to_string(r.total_ground_states));
  return r;
}

SpectrumReport enumerate_spectrum(const BinaryPolynomial &h, std::size_t num_vars,
                                  const EnumerationOptions &options) {
  if (num_vars > options.max_variables || num_vars > kHardVariableLimit)
    throw CapExceeded(std::to_string(num_vars) + " variables exceed the enumeration cap of " +
                      std::to_string(std::min(options.max_variables, kHardVariableLimit)) +
                      "; raise it with --max-vars");
  const CompiledPolynomial energy(h, num_vars);
  const std::uint64_t total = std::uint64_t{1} << num_vars;
  const std::size_t limit = options.ground_state_limit;
  std::size_t workers = options.workers ? options.workers : default_workers();

  std::vector<Partial> partials(std::max<std::size_t>(workers, 1));
  std::size_t used = for_each_range(
      total, workers, options.min_chunk,
      [&](std::uint64_t begin, std::uint64_t end, std::size_t slot) {
        Partial &part = partials[slot];
        for (std::uint64_t x = begin; x < end; ++x) {
          std::int64_t e = energy(x);
          ++part.histogram[e];
          if (e < part.min_energy) {
            part.min_energy = e;
            part.min_count = 0;
            part.min_states.clear();
          }
          if (e == part.min_energy) {
            ++part.min_count;
            if (part.min_states.size() < limit)
              part.min_states.push_back(x);
          }
        }
      });
  partials.resize(used);

  std::unordered_map<std::int64_t, std::uint64_t> merged;
  std::int64_t ground = std::numeric_limits<std::int64_t>::max();
  for (const auto &part : partials) {
    for (const auto &[e, count] : part.histogram)
      merged[e] += count;
    ground = std::min(ground, part.min_energy);
  }
  std::vector<std::uint64_t> states;
  std::uint64_t ground_total = 0;
  for (const auto &part : partials) {
    if (part.min_energy != ground)
      continue;
    ground_total += part.min_count;
    for (std::uint64_t x : part.min_states)
      if (states.size() < limit)
        states.push_back(x);
  }

  std::vector<Level> levels;
  levels.reserve(merged.size());
  for (const auto &[e, count] : merged)
    levels.push_back({e, count});
  std::sort(levels.begin(), levels.end(),
            [](const Level &a, const Level &b) { return a.energy < b.energy; });
  return make_report(num_vars, std::move(levels), std::move(states), ground_total);
}

SpectrumComparison compare_spectra(const SpectrumReport &a, const SpectrumReport &b,
                                   std::size_t levels) {
  SpectrumComparison out;
  if (a.ratio && b.ratio && b.ratio->num() != 0) {
    out.factor = *a.ratio / *b.ratio;
    out.percent = out.factor->to_double() * 100.0;
  }
  for (std::size_t k = 0; k < levels; ++k) {
    LevelShift s{k, std::nullopt, std::nullopt, std::nullopt};
    if (k < a.levels.size())
      s.a = a.levels[k];
    if (k < b.levels.size())
      s.b = b.levels[k];
    if (!s.a && !s.b)
      break;
    if (s.a && s.b)
      s.shift = s.b->energy - s.a->energy;
    out.shifts.push_back(s);
  }
  if (a.n != b.n || a.total_ground_states != b.total_ground_states ||
      a.ground_states != b.ground_states)
    out.same_ground_states = false;
  else if (!a.ground_states_truncated())
    out.same_ground_states = true;
  return out;
}

std::string bitstring(std::uint64_t state, std::size_t n) {
  std::string out(n, '0');
  for (std::size_t i = 0; i < n; ++i)
    if ((state >> i) & 1)
      out[i] = '1';
  return out;
}

Assignment unpack(std::uint64_t state, std::size_t n) {
  Assignment x(n);
  for (std::size_t i = 0; i < n; ++i)
    x[i] = ((state >> i) & 1) != 0;
  return x;
}

} // namespace elmkit
