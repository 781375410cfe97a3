#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <json.hpp>

#include "elmkit/aqcbound.hpp"
#include "elmkit/elm.hpp"
#include "elmkit/pbpoly.hpp"
#include "elmkit/spectrum.hpp"

namespace elmkit {

using json = nlohmann::ordered_json;

/// 64-bit FNV-1a, printed as 16 hex digits.
std::string fnv1a64_hex(std::string_view data);

/// A Hamiltonian together with its variable legend and the chain of
/// transforms that produced it.
struct HamiltonianArtifact {
  VariableTable vars;
  BinaryPolynomial poly;
  json provenance = json::object();
};

json artifact_to_json(const HamiltonianArtifact &artifact);
HamiltonianArtifact artifact_from_json(const json &j);
HamiltonianArtifact load_artifact(const std::string &path);

json spectrum_to_json(const SpectrumReport &report, const VariableTable &vars);
/// "energy,count" rows under a header line.
std::string spectrum_to_csv(const SpectrumReport &report);
/// One row in the column order E_gap, n1, E_|2>, n2, ..., E_|max>, R.
std::string spectrum_table_header(std::size_t excited_levels = 4);
std::string spectrum_table_row(const std::string &label, const SpectrumReport &report,
                               std::size_t excited_levels = 4);

json comparison_to_json(const SpectrumComparison &c);
json weights_to_json(const WeightScheme &scheme);
json bound_to_json(const BoundReport &report);
json rational_to_json(const Rational &r);

} // namespace elmkit
