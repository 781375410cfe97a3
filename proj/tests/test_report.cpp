#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "elmkit/error.hpp"
#include "elmkit/report.hpp"
#include "elmkit/reproduce.hpp"
#include "oracles.hpp"

using namespace elmkit;
namespace fs = std::filesystem;

namespace {

const std::string kData = ELMKIT_DATA_DIR;

fs::path scratch_dir(const std::string &name) {
  auto dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

} // namespace

TEST(Artifact, JsonRoundTrip) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + rng() % 8;
    HamiltonianArtifact a{elmkit::testing::numbered_table(n),
                          elmkit::testing::random_polynomial(rng, n, 10, 100), json::object()};
    a.provenance["source"] = "random";
    auto j = artifact_to_json(a);
    EXPECT_EQ(j["kind"], "elmkit.hamiltonian");
    auto b = artifact_from_json(json::parse(j.dump()));
    ASSERT_EQ(b.vars, a.vars);
    ASSERT_EQ(b.poly, a.poly);
    ASSERT_EQ(b.provenance, a.provenance);
  }
}

TEST(Artifact, RejectsForeignDocuments) {
  EXPECT_THROW(artifact_from_json(json{{"kind", "other"}}), Error);
  json j = artifact_to_json({VariableTable::from_names({"a"}), BinaryPolynomial::variable(0), json::object()});
  j["terms"][0]["vars"][0] = "b";
  EXPECT_THROW(artifact_from_json(j), Error);
  EXPECT_THROW(load_artifact(kData + "/no-such.json"), Error);
}

TEST(SpectrumJson, Schema) {
  auto s = load_system(kData + "/toy.eqs");
  auto r = enumerate_spectrum(system_to_hamiltonian(s), 3);
  auto j = spectrum_to_json(r, s.variables());
  EXPECT_EQ(j["n"], 3);
  EXPECT_EQ(j["e_gap"], 1);
  EXPECT_EQ(j["e_width"], 17);
  EXPECT_EQ(j["ratio"]["num"], 289);
  EXPECT_EQ(j["ratio"]["den"], 1);
  EXPECT_EQ(j["ratio"]["display"], 289);
  EXPECT_EQ(j["levels"][0]["energy"], 0);
  EXPECT_EQ(j["total_ground_states"], 1);
  EXPECT_EQ(j["variables"].size(), 3u);

  auto flat = spectrum_to_json(enumerate_spectrum(BinaryPolynomial::constant(7), 2),
                               elmkit::testing::numbered_table(2));
  EXPECT_TRUE(flat["e_gap"].is_null());
  EXPECT_TRUE(flat["ratio"].is_null());
  EXPECT_FALSE(flat["mode_notes"].empty());
}

TEST(SpectrumText, CsvAndTableRow) {
  auto r = enumerate_spectrum(3 * BinaryPolynomial::variable(0), 2);
  EXPECT_EQ(spectrum_to_csv(r), "energy,count\n0,2\n3,2\n");
  auto header = spectrum_table_header();
  EXPECT_LT(header.find("E_gap"), header.find("n1"));
  EXPECT_LT(header.find("n1"), header.find("E_max"));
  auto row = spectrum_table_row("H0", r);
  EXPECT_NE(row.find("H0"), std::string::npos);
}

TEST(Hashing, Fnv1a) {
  EXPECT_EQ(fnv1a64_hex(""), "cbf29ce484222325");
  EXPECT_EQ(fnv1a64_hex("a"), "af63dc4c8601ec8c");
}

TEST(Reproduction, ShippedDataMatches) {
  auto result = reproduce_tables({kData, 0});
  EXPECT_TRUE(result.ok()) << format_reproduction(result);
  EXPECT_EQ(result.mismatches(true), 0u);
  // the 841 qubit count differs from its caption and is reported only
  bool saw_variables = false;
  for (const auto &c : result.cells)
    if (c.table == "841" && c.column == "variables") {
      saw_variables = true;
      EXPECT_FALSE(c.asserted);
      EXPECT_EQ(c.computed, "16");
      EXPECT_EQ(c.published, "17");
    }
  EXPECT_TRUE(saw_variables);
  auto text = format_reproduction(result);
  EXPECT_NE(text.find("7.54"), std::string::npos);
  EXPECT_NE(text.find("2.50"), std::string::npos);
}

TEST(Reproduction, TamperedDataIsCaught) {
  auto dir = scratch_dir("elmkit_tampered");
  for (const char *f : {"toy.eqs", "841.eqs", "841.deductions", "551.eqs"})
    fs::copy_file(kData + "/" + f, dir / f);
  {
    std::ofstream out(dir / "551.eqs", std::ios::app);
    out << "p1 + p2 = 1\n";
  }
  auto result = reproduce_tables({dir.string(), 0});
  EXPECT_FALSE(result.ok());
  EXPECT_GT(result.mismatches(true), 0u);
  fs::remove_all(dir);
}

TEST(Reproduction, MalformedDataPropagates) {
  auto dir = scratch_dir("elmkit_malformed");
  for (const char *f : {"toy.eqs", "841.eqs", "841.deductions", "551.eqs"})
    fs::copy_file(kData + "/" + f, dir / f);
  {
    std::ofstream out(dir / "toy.eqs", std::ios::trunc);
    out << "x1 + = 2\n";
  }
  EXPECT_THROW(reproduce_tables({dir.string(), 0}), ParseError);
  fs::remove_all(dir);
}
