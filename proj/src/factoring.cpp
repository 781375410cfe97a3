#include "elmkit/factoring.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <sstream>

#include "elmkit/checked.hpp"
#include "elmkit/error.hpp"

namespace elmkit {

namespace {

std::string carry_name(unsigned from, unsigned to) {
  if (from < 10 && to < 10)
    return "z" + std::to_string(from) + std::to_string(to);
  return "z" + std::to_string(from) + "_" + std::to_string(to);
}

std::int64_t coefficient_sum(const BinaryPolynomial &p) {
  std::int64_t total = 0;
  for (const auto &[m, c] : p.terms())
    total = checked_add(total, c, "column maximum");
  return total;
}

void check_indices(const VariableTable &vars, const BinaryPolynomial &p) {
  if (auto top = p.max_variable(); top && *top >= vars.size())
    throw DomainError("equation references variable index " +
                      std::to_string(*top) + " outside the variable table");
}

/// Permutation that puts `vars` in natural order.
std::pair<VariableTable, std::vector<std::optional<VarIndex>>>
natural_reindex(const VariableTable &vars, const std::vector<bool> &keep) {
  std::vector<std::string> names;
  for (VarIndex i = 0; i < vars.size(); ++i)
    if (keep.empty() || keep[i])
      names.push_back(vars.name(i));
  VariableTable sorted = VariableTable::from_names(std::move(names));
  std::vector<std::optional<VarIndex>> map(vars.size());
  for (VarIndex i = 0; i < vars.size(); ++i)
    if (keep.empty() || keep[i])
      map[i] = sorted.find(vars.name(i));
  return {std::move(sorted), std::move(map)};
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

} // namespace

// ---------------------------------------------------------------------------
// Equation / EquationSystem

Equation Equation::normalized() const {
  Equation out;
  auto split = [&](const BinaryPolynomial &side, BinaryPolynomial &same,
                   BinaryPolynomial &other) {
    for (const auto &[m, c] : side.terms()) {
      if (c > 0)
        same += BinaryPolynomial::term(c, m);
      else
        other += BinaryPolynomial::term(checked_sub(0, c, "normalization"), m);
    }
  };
  split(lhs, out.lhs, out.rhs);
  split(rhs, out.rhs, out.lhs);
  return out;
}

bool Equation::is_normalized() const {
  auto non_negative = [](const BinaryPolynomial &p) {
    return std::all_of(p.terms().begin(), p.terms().end(),
                       [](const auto &t) { return t.second > 0; });
  };
  return non_negative(lhs) && non_negative(rhs);
}

Equation Equation::from_residual(const BinaryPolynomial &residual) {
  return Equation{residual, {}}.normalized();
}

EquationSystem::EquationSystem(VariableTable vars, std::vector<Equation> equations)
    : vars_(std::move(vars)), equations_(std::move(equations)) {
  for (const auto &e : equations_) {
    check_indices(vars_, e.lhs);
    check_indices(vars_, e.rhs);
  }
}

EquationSystem EquationSystem::canonical() const {
  if (vars_.is_naturally_ordered())
    return *this;
  auto [sorted, map] = natural_reindex(vars_, {});
  std::vector<Equation> eqs;
  eqs.reserve(equations_.size());
  for (const auto &e : equations_)
    eqs.push_back({e.lhs.remap(map), e.rhs.remap(map)});
  return EquationSystem(std::move(sorted), std::move(eqs));
}

bool EquationSystem::satisfied_by(const Assignment &x) const {
  return std::all_of(equations_.begin(), equations_.end(), [&](const Equation &e) {
    return e.lhs.evaluate(x, &vars_) == e.rhs.evaluate(x, &vars_);
  });
}

// ---------------------------------------------------------------------------
// Generator

FactoringInstance generate_factoring_system(std::uint64_t n, unsigned p_bits,
                                            unsigned q_bits) {
  if (n < 9 || n % 2 == 0)
    throw DomainError("N must be odd and at least 9, got " + std::to_string(n));
  if (p_bits < 2 || q_bits < 2)
    throw DomainError("factor bit-lengths must be at least 2");
  auto length = static_cast<unsigned>(std::bit_width(n));
  if (p_bits + q_bits > 62 ||
      (length != p_bits + q_bits && length + 1 != p_bits + q_bits))
    throw DomainError("bit-lengths " + std::to_string(p_bits) + " + " +
                      std::to_string(q_bits) + " cannot produce the " +
                      std::to_string(length) + "-bit number " + std::to_string(n));

  VariableTable vars;
  auto factor_bits = [&](char prefix, unsigned bits) {
    std::vector<BinaryPolynomial> out;
    for (unsigned i = 0; i < bits; ++i)
      out.push_back(i == 0 || i + 1 == bits
                        ? BinaryPolynomial::constant(1)
                        : BinaryPolynomial::variable(
                              vars.intern(prefix + std::to_string(i))));
    return out;
  };
  auto p = factor_bits('p', p_bits);
  auto q = factor_bits('q', q_bits);

  std::vector<Equation> equations;
  std::vector<BinaryPolynomial> incoming(p_bits + q_bits + 64);
  const unsigned product_columns = p_bits + q_bits - 1;
  for (unsigned c = 0;; ++c) {
    bool pending = std::any_of(incoming.begin() + c, incoming.end(),
                               [](const auto &x) { return !x.is_zero(); });
    if (c >= std::max(length, product_columns) && !pending)
      break;
    BinaryPolynomial lhs = incoming[c];
    for (unsigned i = 0; i < p_bits; ++i)
      if (c >= i && c - i < q_bits)
        lhs += p[i] * q[c - i];
    const std::int64_t bit = c < 64 ? static_cast<std::int64_t>((n >> c) & 1) : 0;
    std::int64_t max_sum = coefficient_sum(lhs);
    std::int64_t carry_max = max_sum > bit ? (max_sum - bit) / 2 : 0;
    BinaryPolynomial rhs = BinaryPolynomial::constant(bit);
    for (unsigned k = 1; (std::int64_t{1} << (k - 1)) <= carry_max; ++k) {
      auto z = BinaryPolynomial::variable(vars.intern(carry_name(c, c + k)));
      rhs += (std::int64_t{1} << k) * z;
      incoming[c + k] += z;
    }
    if (lhs.is_constant() && rhs.is_constant() &&
        lhs.constant_term() == rhs.constant_term())
      continue;
    equations.push_back(Equation::from_residual(lhs - rhs));
  }

  FactoringInstance instance;
  instance.n = n;
  instance.p_bits = p_bits;
  instance.q_bits = q_bits;
  instance.system = EquationSystem(std::move(vars), std::move(equations)).canonical();
  return instance;
}

std::pair<std::uint64_t, std::uint64_t>
FactoringInstance::decode(const Assignment &x) const {
  return decode(x, system.variables());
}

std::pair<std::uint64_t, std::uint64_t>
FactoringInstance::decode(const Assignment &x, const VariableTable &vars) const {
  auto read = [&](char prefix, unsigned bits) {
    std::uint64_t value = 0;
    for (unsigned i = 0; i < bits; ++i) {
      bool on = true;
      if (i != 0 && i + 1 != bits) {
        auto index = vars.find(prefix + std::to_string(i));
        if (!index || *index >= x.size())
          throw DomainError(std::string("assignment has no value for ") + prefix +
                            std::to_string(i));
        on = x[*index];
      }
      if (on)
        value |= std::uint64_t{1} << i;
    }
    return value;
  };
  return {read('p', p_bits), read('q', q_bits)};
}

// ---------------------------------------------------------------------------
// Elementary deductions

Assignment Reduction::expand(const Assignment &reduced) const {
  if (reduced.size() != system.variables().size())
    throw DomainError("reduced assignment has the wrong length");
  Assignment full(original.size(), false);
  for (VarIndex i = 0; i < system.variables().size(); ++i)
    full[*original.find(system.variables().name(i))] = reduced[i];
  for (auto it = deductions.rbegin(); it != deductions.rend(); ++it) {
    VarIndex target = it->lhs().terms().begin()->first.front();
    full[target] = it->rhs().evaluate(full) != 0;
  }
  return full;
}

Reduction apply_simple_deductions(const EquationSystem &system) {
  const VariableTable &vars = system.variables();
  std::vector<Equation> eqs = system.equations();
  std::vector<Deduction> deductions;
  std::vector<bool> eliminated(vars.size(), false);

  auto substitute = [&](VarIndex v, const BinaryPolynomial &value) {
    for (auto &e : eqs) {
      e.lhs = e.lhs.substitute(v, value);
      e.rhs = e.rhs.substitute(v, value);
    }
    eliminated[v] = true;
    deductions.push_back(Deduction::relation(BinaryPolynomial::variable(v), value));
  };
  auto contradiction = [&](const Equation &e, const std::string &why) {
    throw Contradiction("unsatisfiable equation " + format_polynomial(e.lhs, vars) +
                        " = " + format_polynomial(e.rhs, vars) + ": " + why);
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < eqs.size();) {
      const BinaryPolynomial r = eqs[i].residual();
      if (r.is_zero()) {
        eqs.erase(eqs.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        continue;
      }
      if (r.is_constant())
        contradiction(eqs[i], "reduces to a nonzero constant");

      const std::vector<VarIndex> support = r.variables();
      const std::int64_t c = r.constant_term();

      // single variable: a*x + c = 0
      if (support.size() == 1) {
        std::int64_t a = r.terms().rbegin()->second;
        bool zero_ok = c == 0;
        bool one_ok = checked_add(a, c) == 0;
        if (!zero_ok && !one_ok)
          contradiction(eqs[i], "no value of " + vars.name(support[0]) + " works");
        eqs.erase(eqs.begin() + static_cast<std::ptrdiff_t>(i));
        substitute(support[0], BinaryPolynomial::constant(one_ok ? 1 : 0));
        changed = true;
        continue;
      }

      // x = y
      if (c == 0 && r.size() == 2 && r.degree() == 1) {
        auto first = r.terms().begin();
        auto second = std::next(first);
        if (first->second == -second->second) {
          VarIndex keep = first->first.front(), drop = second->first.front();
          eqs.erase(eqs.begin() + static_cast<std::ptrdiff_t>(i));
          substitute(drop, BinaryPolynomial::variable(keep));
          changed = true;
          continue;
        }
      }

      // all variable terms share a sign: sum of non-negative terms = target
      bool all_positive = true, all_negative = true;
      std::int64_t total = 0;
      for (const auto &[m, a] : r.terms()) {
        if (m.empty())
          continue;
        all_positive = all_positive && a > 0;
        all_negative = all_negative && a < 0;
        total = checked_add(total, a < 0 ? checked_sub(0, a) : a);
      }
      if (all_positive || all_negative) {
        std::int64_t target = all_positive ? checked_sub(0, c) : c;
        if (target < 0 || target > total)
          contradiction(eqs[i], "target outside the attainable range");
        if (target == 0) {
          std::vector<VarIndex> singles;
          for (const auto &[m, a] : r.terms())
            if (m.size() == 1)
              singles.push_back(m.front());
          if (!singles.empty()) {
            for (VarIndex v : singles)
              substitute(v, BinaryPolynomial::constant(0));
            changed = true;
            continue;
          }
        } else if (target == total) {
          for (VarIndex v : support)
            substitute(v, BinaryPolynomial::constant(1));
          changed = true;
          continue;
        }
      }
      ++i;
    }
  }

  std::vector<bool> keep(vars.size());
  for (VarIndex v = 0; v < vars.size(); ++v)
    keep[v] = !eliminated[v];
  auto [table, map] = natural_reindex(vars, keep);
  std::vector<Equation> remapped;
  remapped.reserve(eqs.size());
  for (const auto &e : eqs)
    remapped.push_back({e.lhs.remap(map), e.rhs.remap(map)});

  Reduction out;
  out.system = EquationSystem(std::move(table), std::move(remapped));
  out.original = vars;
  out.deductions = std::move(deductions);
  return out;
}

// ---------------------------------------------------------------------------
// Exhaustive solver

namespace {

class Solver {
public:
  Solver(const EquationSystem &system, std::size_t limit)
      : n_(system.variables().size()), limit_(limit), value_(n_, -1),
        watch_(n_) {
    for (const auto &e : system.equations()) {
      auto r = e.residual();
      if (r.is_constant()) {
        if (!r.is_zero())
          infeasible_ = true;
        continue;
      }
      for (VarIndex v : r.variables())
        watch_[v].push_back(residuals_.size());
      residuals_.push_back(std::move(r));
    }
  }

  std::vector<Assignment> run() {
    if (!infeasible_)
      descend(0);
    return std::move(found_);
  }

private:
  bool feasible(const BinaryPolynomial &r) const {
    std::int64_t lo = 0, hi = 0;
    for (const auto &[m, c] : r.terms()) {
      bool zero = false, free = false;
      for (VarIndex v : m) {
        if (value_[v] == 0) {
          zero = true;
          break;
        }
        free = free || value_[v] < 0;
      }
      if (zero)
        continue;
      if (!free) {
        lo = checked_add(lo, c);
        hi = checked_add(hi, c);
      } else if (c > 0) {
        hi = checked_add(hi, c);
      } else {
        lo = checked_add(lo, c);
      }
    }
    return lo <= 0 && 0 <= hi;
  }

  void descend(std::size_t depth) {
    if (found_.size() >= limit_)
      return;
    if (depth == n_) {
      Assignment x(n_);
      for (std::size_t i = 0; i < n_; ++i)
        x[i] = value_[i] == 1;
      found_.push_back(std::move(x));
      return;
    }
    for (std::int8_t bit : {0, 1}) {
      value_[depth] = bit;
      bool ok = std::all_of(watch_[depth].begin(), watch_[depth].end(),
                            [&](std::size_t e) { return feasible(residuals_[e]); });
      if (ok)
        descend(depth + 1);
    }
    value_[depth] = -1;
  }

  std::size_t n_;
  std::size_t limit_;
  bool infeasible_ = false;
  std::vector<std::int8_t> value_;
  std::vector<BinaryPolynomial> residuals_;
  std::vector<std::vector<std::size_t>> watch_;
  std::vector<Assignment> found_;
};

} // namespace

std::vector<Assignment> solve_exhaustive(const EquationSystem &system,
                                         std::size_t limit) {
  return Solver(system, limit).run();
}

// ---------------------------------------------------------------------------
// Hamiltonian

BinaryPolynomial
system_to_hamiltonian(const EquationSystem &system,
                      std::optional<std::span<const std::int64_t>> weights) {
  if (weights && weights->size() != system.size())
    throw DomainError("expected " + std::to_string(system.size()) +
                      " weights, got " + std::to_string(weights->size()));
  BinaryPolynomial h;
  for (std::size_t i = 0; i < system.size(); ++i) {
    std::int64_t w = weights ? (*weights)[i] : 1;
    if (w <= 0)
      throw DomainError("weight " + std::to_string(i + 1) +
                        " must be positive, got " + std::to_string(w));
    h += w * square(system.equations()[i].residual());
  }
  return h;
}

// ---------------------------------------------------------------------------
// Text format

EquationSystem parse_system(std::string_view text) {
  VariableTable vars;
  std::vector<Equation> eqs;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    if (trim(line).empty())
      continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ParseError("expected '<poly> = <poly>'", line_no, 1);
    if (line.find('=', eq + 1) != std::string_view::npos)
      throw ParseError("more than one '='", line_no,
                       line.find('=', eq + 1) + 1);
    Equation e;
    try {
      e.lhs = parse_polynomial(line.substr(0, eq), vars);
    } catch (const ParseError &err) {
      throw ParseError(err.message(), line_no, err.column());
    }
    try {
      e.rhs = parse_polynomial(line.substr(eq + 1), vars);
    } catch (const ParseError &err) {
      throw ParseError(err.message(), line_no, eq + 1 + err.column());
    }
    eqs.push_back(std::move(e));
  }
  return EquationSystem(std::move(vars), std::move(eqs)).canonical();
}

EquationSystem load_system(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw DomainError("cannot open equation file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_system(buf.str());
  } catch (const ParseError &e) {
    throw ParseError(e.message(), e.line(), e.column(), path);
  }
}

std::string format_system(const EquationSystem &system) {
  std::string out;
  for (const auto &e : system.equations())
    out += format_polynomial(e.lhs, system.variables()) + " = " +
           format_polynomial(e.rhs, system.variables()) + "\n";
  return out;
}

void save_system(const EquationSystem &system, const std::string &path) {
  std::ofstream out(path);
  if (!out)
    throw DomainError("cannot write equation file " + path);
  out << format_system(system);
}

} // namespace elmkit
