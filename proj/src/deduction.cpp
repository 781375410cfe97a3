#include "elmkit/deduction.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "elmkit/error.hpp"

namespace elmkit {

namespace {

void require_positive(std::int64_t weight) {
  if (weight <= 0)
    throw DomainError("deduction weight must be positive, got " +
                      std::to_string(weight));
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

/// Parses with a scratch copy of `vars` and rejects unknown names.
BinaryPolynomial parse_known(std::string_view text, const VariableTable &vars) {
  VariableTable scratch = vars;
  BinaryPolynomial p = parse_polynomial(text, scratch);
  if (scratch.size() != vars.size())
    throw DomainError("deduction mentions unknown variable '" +
                      scratch.name(static_cast<VarIndex>(vars.size())) + "'");
  return p;
}

VarIndex lookup(std::string_view name, const VariableTable &vars) {
  auto index = vars.find(trim(name));
  if (!index)
    throw DomainError("deduction mentions unknown variable '" +
                      std::string(trim(name)) + "'");
  return *index;
}

/// Splits off a trailing "lambda=<int>" (optionally bracketed).
std::int64_t take_weight(std::string_view &body) {
  auto pos = body.rfind("lambda");
  if (pos == std::string_view::npos)
    return 1;
  std::string_view tail = body.substr(pos + 6);
  body = trim(body.substr(0, pos));
  if (!body.empty() && body.back() == '[')
    body = trim(body.substr(0, body.size() - 1));
  tail = trim(tail);
  if (tail.empty() || tail.front() != '=')
    throw ParseError("expected '=' after lambda", 0, pos + 7);
  tail = trim(tail.substr(1));
  if (!tail.empty() && tail.back() == ']')
    tail = trim(tail.substr(0, tail.size() - 1));
  std::int64_t weight = 0;
  auto [ptr, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), weight);
  if (ec != std::errc() || ptr != tail.data() + tail.size())
    throw ParseError("malformed lambda value '" + std::string(tail) + "'", 0,
                     pos + 1);
  require_positive(weight);
  return weight;
}

} // namespace

Deduction Deduction::relation(BinaryPolynomial f, BinaryPolynomial g,
                              std::int64_t weight) {
  require_positive(weight);
  Deduction d;
  d.kind_ = Kind::relation;
  d.lhs_ = std::move(f);
  d.rhs_ = std::move(g);
  d.weight_ = weight;
  return d;
}

Deduction Deduction::implication(VarIndex trigger,
                                 std::vector<Consequence> consequences,
                                 std::int64_t weight) {
  require_positive(weight);
  if (consequences.empty())
    throw DomainError("implication needs at least one consequence");
  Deduction d;
  d.kind_ = Kind::implication;
  d.trigger_ = trigger;
  d.consequences_ = std::move(consequences);
  d.weight_ = weight;
  return d;
}

Deduction Deduction::with_weight(std::int64_t weight) const {
  require_positive(weight);
  Deduction d = *this;
  d.weight_ = weight;
  return d;
}

BinaryPolynomial Deduction::penalty() const {
  if (kind_ == Kind::relation)
    return weight_ * square(lhs_ - rhs_);
  BinaryPolynomial violations;
  for (const auto &c : consequences_) {
    auto w = BinaryPolynomial::variable(c.variable);
    violations += c.value ? BinaryPolynomial::constant(1) - w : w;
  }
  return weight_ * (BinaryPolynomial::variable(trigger_) * violations);
}

bool Deduction::satisfied_by(const Assignment &x) const {
  if (kind_ == Kind::relation)
    return lhs_.evaluate(x) == rhs_.evaluate(x);
  if (trigger_ >= x.size())
    throw DomainError("assignment does not cover implication trigger");
  if (!x[trigger_])
    return true;
  return std::all_of(consequences_.begin(), consequences_.end(),
                     [&](const Consequence &c) {
                       if (c.variable >= x.size())
                         throw DomainError(
                             "assignment does not cover implication consequence");
                       return x[c.variable] == c.value;
                     });
}

std::vector<VarIndex> Deduction::variables() const {
  std::vector<VarIndex> out;
  if (kind_ == Kind::relation) {
    out = lhs_.variables();
    auto more = rhs_.variables();
    out.insert(out.end(), more.begin(), more.end());
  } else {
    out.push_back(trigger_);
    for (const auto &c : consequences_)
      out.push_back(c.variable);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Deduction parse_deduction(std::string_view line, const VariableTable &vars) {
  std::string_view body = trim(line);
  auto colon = body.find(':');
  if (colon == std::string_view::npos)
    throw ParseError("expected 'relation:' or 'imply:'", 0, 1);
  std::string_view kind = trim(body.substr(0, colon));
  body = trim(body.substr(colon + 1));
  std::int64_t weight = take_weight(body);

  if (kind == "relation") {
    auto eq = body.find("==");
    if (eq == std::string_view::npos)
      throw ParseError("relation needs '=='", 0, colon + 2);
    return Deduction::relation(parse_known(body.substr(0, eq), vars),
                               parse_known(body.substr(eq + 2), vars), weight);
  }
  if (kind == "imply") {
    auto arrow = body.find("->");
    if (arrow == std::string_view::npos)
      throw ParseError("implication needs '->'", 0, colon + 2);
    VarIndex trigger = lookup(body.substr(0, arrow), vars);
    std::vector<Consequence> consequences;
    std::string_view rest = body.substr(arrow + 2);
    while (!trim(rest).empty()) {
      auto comma = rest.find(',');
      std::string_view item = trim(rest.substr(0, comma));
      rest = comma == std::string_view::npos ? std::string_view{}
                                             : rest.substr(comma + 1);
      auto eq = item.find('=');
      if (eq == std::string_view::npos)
        throw ParseError("consequence '" + std::string(item) +
                             "' must read <var>=<0|1>",
                         0, colon + 2);
      std::string_view value = trim(item.substr(eq + 1));
      if (value != "0" && value != "1")
        throw ParseError("consequence value must be 0 or 1", 0, colon + 2);
      consequences.push_back({lookup(item.substr(0, eq), vars), value == "1"});
    }
    return Deduction::implication(trigger, std::move(consequences), weight);
  }
  throw ParseError("unknown deduction kind '" + std::string(kind) + "'", 0, 1);
}

std::string format_deduction(const Deduction &d, const VariableTable &vars) {
  std::string out;
  if (d.kind() == Deduction::Kind::relation) {
    out = "relation: " + format_polynomial(d.lhs(), vars) +
          " == " + format_polynomial(d.rhs(), vars);
  } else {
    out = "imply: " + vars.name(d.trigger()) + " ->";
    for (std::size_t i = 0; i < d.consequences().size(); ++i) {
      const auto &c = d.consequences()[i];
      out += (i ? ", " : " ") + vars.name(c.variable) + "=" + (c.value ? "1" : "0");
    }
  }
  return out + " [lambda=" + std::to_string(d.weight()) + "]";
}

std::vector<Deduction> parse_deductions(std::string_view text,
                                        const VariableTable &vars) {
  std::vector<Deduction> out;
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
    try {
      out.push_back(parse_deduction(line, vars));
    } catch (const ParseError &e) {
      throw ParseError(e.message(), line_no, e.column());
    } catch (const DomainError &e) {
      throw DomainError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

std::vector<Deduction> load_deductions(const std::string &path,
                                       const VariableTable &vars) {
  std::ifstream in(path);
  if (!in)
    throw DomainError("cannot open deduction file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_deductions(buf.str(), vars);
}

std::string format_deductions(const std::vector<Deduction> &ds,
                              const VariableTable &vars) {
  std::string out;
  for (const auto &d : ds)
    out += format_deduction(d, vars) + "\n";
  return out;
}

std::string describe_penalty(const Deduction &d, const VariableTable &vars) {
  std::string scale = d.weight() == 1 ? "" : std::to_string(d.weight()) + "*";
  if (d.kind() == Deduction::Kind::relation)
    return scale + "(" + format_polynomial(d.lhs() - d.rhs(), vars) + ")^2";
  BinaryPolynomial violations;
  for (const auto &c : d.consequences()) {
    auto w = BinaryPolynomial::variable(c.variable);
    violations += c.value ? BinaryPolynomial::constant(1) - w : w;
  }
  // constant first reads like the usual k - w1 - ... - wk
  std::string inner = format_polynomial(violations, vars);
  if (auto k = violations.constant_term(); k != 0) {
    auto rest = violations - BinaryPolynomial::constant(k);
    inner = std::to_string(k);
    if (!rest.is_zero()) {
      std::string tail = format_polynomial(rest, vars);
      inner += tail.front() == '-' ? " - " + tail.substr(1) : " + " + tail;
    }
  }
  return scale + vars.name(d.trigger()) + "*(" + inner + ")";
}

} // namespace elmkit
