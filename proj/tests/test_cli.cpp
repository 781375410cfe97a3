#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

const std::string kCli = ELMKIT_CLI;
const std::string kData = ELMKIT_DATA_DIR;

struct Run {
  int code;
  std::string out;
};

Run run(const std::string &args) {
  std::string command = "'" + kCli + "' " + args + " 2>/dev/null";
  FILE *pipe = popen(command.c_str(), "r");
  if (!pipe)
    throw std::runtime_error("popen failed");
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t got = std::fread(buf.data(), 1, buf.size(), pipe))
    out.append(buf.data(), got);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string read_file(const fs::path &p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), {}};
}

/// Everything after the first line, which records the resolved config.
std::string body(const std::string &text) { return text.substr(text.find('\n') + 1); }

class Cli : public ::testing::Test {
protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("elmkit_cli_" + std::string(
        ::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string &name) const { return (dir_ / name).string(); }
  fs::path dir_;
};

} // namespace

TEST_F(Cli, GenerateFifteen) {
  auto r = run("generate 15 --p-bits 2 --q-bits 3 --solve");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("# elmkit config:"), std::string::npos);
  EXPECT_NE(r.out.find("p=3 q=5"), std::string::npos) << r.out;
}

TEST_F(Cli, GenerateEightFortyOneHasUniqueSolution) {
  auto r = run("generate 841 --p-bits 5 --q-bits 5 --solve -o " + path("841.eqs"));
  ASSERT_EQ(r.code, 0);
  auto text = read_file(path("841.eqs"));
  EXPECT_NE(text.find("p=29 q=29"), std::string::npos);
  EXPECT_EQ(text.find("# solution:"), text.rfind("# solution:"));
  // the written file loads back as a system
  EXPECT_EQ(run("spectrum " + path("841.eqs") + " --format csv").code, 0);
}

TEST_F(Cli, GenerateRejectsEvenN) {
  EXPECT_EQ(run("generate 8 --p-bits 2 --q-bits 2").code, 1);
  EXPECT_EQ(run("generate").code, 1);
  EXPECT_EQ(run("no-such-command").code, 1);
}

TEST_F(Cli, ElmCeilWeights) {
  auto r = run("elm " + kData + "/551.eqs --scheme ceil -o " + path("h1.json"));
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("lambda = (13,13,2,2,1,2,2,6,13)"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("preserved: yes"), std::string::npos);
  auto artifact = json::parse(read_file(path("h1.json")));
  EXPECT_EQ(artifact["kind"], "elmkit.hamiltonian");
  EXPECT_TRUE(artifact["provenance"].contains("source_hash"));
}

TEST_F(Cli, ElmUniformIsIdentity) {
  ASSERT_EQ(run("elm " + kData + "/551.eqs --scheme uniform -o " + path("u.json")).code, 0);
  auto a = run("spectrum " + path("u.json") + " --format csv");
  auto b = run("spectrum " + kData + "/551.eqs --format csv");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(body(a.out).substr(body(a.out).find('\n')), body(b.out).substr(body(b.out).find('\n')));
}

TEST_F(Cli, ElmDeductionsAndCompare) {
  auto r = run("elm " + kData + "/841.eqs --deductions " + kData + "/841.deductions -o " +
               path("h2.json"));
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("z24*(3 - p1 - p2 - q2)"), std::string::npos) << r.out;
  ASSERT_EQ(run("elm " + kData + "/841.eqs --scheme uniform -o " + path("h0.json")).code, 0);

  auto s = run("spectrum " + path("h0.json") + " --format table");
  ASSERT_EQ(s.code, 0);
  EXPECT_NE(s.out.find("27556"), std::string::npos) << s.out;

  auto c = run("compare " + path("h0.json") + " " + path("h2.json"));
  ASSERT_EQ(c.code, 0);
  auto j = json::parse(c.out);
  EXPECT_EQ(j["ratio_factor"]["num"], 27556 * 8);
  EXPECT_EQ(j["ratio_factor"]["den"], 29241);
}

TEST_F(Cli, ElmNeedsExactlyOneTransform) {
  EXPECT_EQ(run("elm " + kData + "/551.eqs").code, 1);
  EXPECT_EQ(run("elm " + kData + "/551.eqs --scheme ceil --deductions " + kData +
                "/841.deductions").code,
            1);
  EXPECT_EQ(run("elm " + kData + "/551.eqs --scheme bogus").code, 1);
}

TEST_F(Cli, ElmFailsOnInvalidDeduction) {
  {
    std::ofstream out(path("bad.deductions"));
    out << "imply: x1 -> x2=1\n";  // the toy solution has x1 = 1, x2 = 0
  }
  auto r = run("elm " + kData + "/toy.eqs --deductions " + path("bad.deductions"));
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("witness"), std::string::npos) << r.out;
}

TEST_F(Cli, SpectrumFormatsAndFlatLandscape) {
  auto j = run("spectrum " + kData + "/toy.eqs");
  ASSERT_EQ(j.code, 0);
  auto doc = json::parse(j.out);
  EXPECT_EQ(doc["ratio"]["num"], 289);
  EXPECT_EQ(doc["config"]["command"], "spectrum");

  {
    std::ofstream out(path("flat.eqs"));
    out << "x1 + x2 = x1 + x2\n";
  }
  auto flat = json::parse(run("spectrum " + path("flat.eqs")).out);
  EXPECT_TRUE(flat["e_gap"].is_null());
  EXPECT_FALSE(flat["mode_notes"].empty());
}

TEST_F(Cli, SpectrumCapExitCode) {
  EXPECT_EQ(run("spectrum " + kData + "/551.eqs --max-vars 10").code, 3);
  EXPECT_EQ(run("bound " + kData + "/841.eqs").code, 3);
}

TEST_F(Cli, OutputIndependentOfWorkers) {
  auto a = run("spectrum " + kData + "/551.eqs --workers 1 --format csv");
  auto b = run("spectrum " + kData + "/551.eqs --workers 7 --format csv");
  ASSERT_EQ(a.code, 0);
  ASSERT_EQ(b.code, 0);
  EXPECT_EQ(body(a.out), body(b.out));
  EXPECT_EQ(run("spectrum " + kData + "/551.eqs --workers 1 --format csv").out, a.out);
}

TEST_F(Cli, BoundOnToy) {
  auto r = run("bound " + kData + "/toy.eqs --epsilon 0.1");
  ASSERT_EQ(r.code, 0);
  auto j = json::parse(r.out);
  EXPECT_EQ(j["loose_bound"]["num"], 2890);
  EXPECT_EQ(j["loose_bound"]["den"], 1);
  EXPECT_EQ(run("bound " + kData + "/toy.eqs --hinit none --epsilon 1/4").code, 0);
  EXPECT_EQ(run("bound " + kData + "/toy.eqs --hinit sideways").code, 1);
  EXPECT_EQ(run("bound " + kData + "/toy.eqs --epsilon zero").code, 1);
}

TEST_F(Cli, ReproduceTables) {
  auto r = run("reproduce-tables --data-dir " + kData);
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("7.54"), std::string::npos);
  EXPECT_NE(r.out.find("17689"), std::string::npos);
}

TEST_F(Cli, ReproduceTablesFailsOnTamperedData) {
  for (const char *f : {"toy.eqs", "841.eqs", "841.deductions", "551.eqs"})
    fs::copy_file(kData + "/" + f, dir_ / f);
  auto text = read_file(dir_ / "toy.eqs");
  text.replace(text.find("x3 + 1"), 6, "x3 + 0");
  std::ofstream(dir_ / "toy.eqs", std::ios::trunc) << text;
  auto r = run("reproduce-tables --data-dir " + dir_.string());
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("MISMATCH"), std::string::npos) << r.out;
}

TEST_F(Cli, ParseErrorsNameTheFile) {
  {
    std::ofstream out(path("broken.eqs"));
    out << "x1 = 1\nx1 + = 2\n";
  }
  std::string command = "'" + kCli + "' spectrum " + path("broken.eqs") + " 2>&1";
  FILE *pipe = popen(command.c_str(), "r");
  std::string out;
  std::array<char, 512> buf{};
  while (std::size_t got = std::fread(buf.data(), 1, buf.size(), pipe))
    out.append(buf.data(), got);
  int status = pclose(pipe);
  EXPECT_EQ(WEXITSTATUS(status), 1);
  EXPECT_NE(out.find("broken.eqs"), std::string::npos) << out;
  EXPECT_NE(out.find("line 2"), std::string::npos) << out;
}
