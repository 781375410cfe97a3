#include "elmkit/report.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "elmkit/error.hpp"

namespace elmkit {

std::string fnv1a64_hex(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

json rational_to_json(const Rational &r) {
  return json{{"num", r.num()}, {"den", r.den()}, {"display", r.round_half_up()}};
}

json artifact_to_json(const HamiltonianArtifact &a) {
  json terms = json::array();
  for (const auto &[m, c] : a.poly.terms()) {
    json names = json::array();
    for (VarIndex v : m)
      names.push_back(a.vars.name(v));
    terms.push_back(json{{"coef", c}, {"vars", names}});
  }
  return json{{"kind", "elmkit.hamiltonian"},
              {"version", 1},
              {"variables", a.vars.names()},
              {"polynomial", format_polynomial(a.poly, a.vars)},
              {"terms", terms},
              {"provenance", a.provenance}};
}

HamiltonianArtifact artifact_from_json(const json &j) {
  if (!j.is_object() || j.value("kind", "") != "elmkit.hamiltonian")
    throw DomainError("not a Hamiltonian artifact (missing kind elmkit.hamiltonian)");
  HamiltonianArtifact a;
  for (const auto &name : j.at("variables"))
    a.vars.intern(name.get<std::string>());
  if (a.vars.size() != j.at("variables").size())
    throw DomainError("artifact lists a variable twice");
  for (const auto &t : j.at("terms")) {
    Monomial m;
    for (const auto &name : t.at("vars")) {
      auto index = a.vars.find(name.get<std::string>());
      if (!index)
        throw DomainError("artifact term uses undeclared variable '" +
                          name.get<std::string>() + "'");
      m.push_back(*index);
    }
    a.poly += BinaryPolynomial::term(t.at("coef").get<std::int64_t>(), std::move(m));
  }
  if (j.contains("provenance"))
    a.provenance = j.at("provenance");
  return a;
}

HamiltonianArtifact load_artifact(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw DomainError("cannot open artifact " + path);
  try {
    return artifact_from_json(json::parse(in));
  } catch (const json::exception &e) {
    throw DomainError(path + ": " + e.what());
  }
}

json spectrum_to_json(const SpectrumReport &r, const VariableTable &vars) {
  json levels = json::array();
  for (const auto &l : r.levels)
    levels.push_back(json{{"energy", l.energy}, {"count", l.count}});
  json ground = json::array();
  for (auto x : r.ground_states)
    ground.push_back(bitstring(x, r.n));
  json out{{"n", r.n},
           {"variables", vars.names()},
           {"levels", levels},
           {"ground_states", ground},
           {"total_ground_states", r.total_ground_states},
           {"e_gap", r.e_gap ? json(*r.e_gap) : json(nullptr)},
           {"e_width", r.e_width},
           {"ratio", r.ratio ? rational_to_json(*r.ratio) : json(nullptr)},
           {"mode_notes", r.notes}};
  return out;
}

std::string spectrum_to_csv(const SpectrumReport &r) {
  std::string out = "energy,count\n";
  for (const auto &l : r.levels)
    out += std::to_string(l.energy) + "," + std::to_string(l.count) + "\n";
  return out;
}

std::string spectrum_table_header(std::size_t excited) {
  std::ostringstream out;
  out << std::left << std::setw(8) << "H" << std::right << std::setw(7) << "E_gap"
      << std::setw(7) << "n1";
  for (std::size_t k = 2; k <= excited; ++k)
    out << std::setw(7) << ("E_|" + std::to_string(k) + ">") << std::setw(7)
        << ("n" + std::to_string(k));
  out << std::setw(8) << "E_max" << std::setw(9) << "R";
  return out.str();
}

std::string spectrum_table_row(const std::string &label, const SpectrumReport &r,
                               std::size_t excited) {
  std::ostringstream out;
  out << std::left << std::setw(8) << label << std::right;
  for (std::size_t k = 1; k <= excited; ++k) {
    if (k < r.levels.size())
      out << std::setw(7) << r.levels[k].energy << std::setw(7) << r.levels[k].count;
    else
      out << std::setw(7) << "-" << std::setw(7) << "-";
  }
  out << std::setw(8) << r.max_energy();
  if (r.ratio) {
    out << std::setw(9) << r.ratio->round_half_up();
    if (!r.ratio->is_integer())
      out << " (" << r.ratio->str() << ")";
  } else {
    out << std::setw(9) << "undef";
  }
  return out.str();
}

json comparison_to_json(const SpectrumComparison &c) {
  json shifts = json::array();
  auto level = [](const std::optional<Level> &l) {
    return l ? json{{"energy", l->energy}, {"count", l->count}} : json(nullptr);
  };
  for (const auto &s : c.shifts)
    shifts.push_back(json{{"k", s.k},
                          {"a", level(s.a)},
                          {"b", level(s.b)},
                          {"shift", s.shift ? json(*s.shift) : json(nullptr)}});
  json factor = nullptr;
  if (c.factor)
    factor = json{{"num", c.factor->num()},
                  {"den", c.factor->den()},
                  {"value", c.factor->to_double()}};
  return json{{"ratio_factor", factor},
              {"percent", c.percent ? json(*c.percent) : json(nullptr)},
              {"level_shifts", shifts},
              {"same_ground_states",
               c.same_ground_states ? json(*c.same_ground_states) : json(nullptr)}};
}

json weights_to_json(const WeightScheme &scheme) {
  json rows = json::array();
  for (const auto &w : scheme.per_equation)
    rows.push_back(json{{"max_energy", w.max_energy}, {"lambda", w.lambda}});
  return json{{"scheme", to_string(scheme.kind)},
              {"mode", to_string(scheme.mode)},
              {"e_max", scheme.e_max},
              {"equations", rows}};
}

json bound_to_json(const BoundReport &r) {
  auto real = [](double v) {
    return std::isfinite(v) ? json(v) : json("inf");
  };
  return json{{"spectral_norm_diff", r.spectral_norm_diff},
              {"norm_final", r.norm_final},
              {"norm_init", r.norm_init},
              {"min_gap", r.gap.gap},
              {"argmin_s", r.gap.argmin},
              {"ground_degeneracy", r.gap.ground_degeneracy},
              {"degenerate_final", r.gap.degenerate_final},
              {"epsilon", json{{"num", r.epsilon.num()}, {"den", r.epsilon.den()}}},
              {"tight_bound", real(r.tight_bound)},
              {"final_time_term", real(r.final_time_term)},
              {"loose_bound",
               json{{"num", r.loose_bound.num()},
                    {"den", r.loose_bound.den()},
                    {"value", r.loose_bound.to_double()}}},
              {"norm_within_width", r.norm_within_width},
              {"loose_dominates_final_term", r.loose_dominates_final_term},
              {"weyl_check",
               json{{"triangle_holds", r.triangle_holds},
                    {"difference_form_holds", r.difference_form_holds}}},
              {"notes", r.notes}};
}

} // namespace elmkit
