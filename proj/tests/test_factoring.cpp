#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <set>

#include "elmkit/error.hpp"
#include "elmkit/factoring.hpp"
#include "oracles.hpp"

using namespace elmkit;
using elmkit::testing::brute_force_solutions;
using elmkit::testing::nth_assignment;

namespace {

using Pair = std::pair<std::uint64_t, std::uint64_t>;

const std::string kData = ELMKIT_DATA_DIR;

std::set<std::pair<std::uint64_t, std::uint64_t>>
factor_pairs(const FactoringInstance &inst) {
  std::set<std::pair<std::uint64_t, std::uint64_t>> out;
  for (const auto &x : solve_exhaustive(inst.system))
    out.insert(inst.decode(x));
  return out;
}

EquationSystem sys(const std::string &text) { return parse_system(text); }

} // namespace

TEST(Generator, NineIsThreeSquared) {
  auto inst = generate_factoring_system(9, 2, 2);
  auto pairs = factor_pairs(inst);
  ASSERT_EQ(pairs.size(), 1u);
  EXPECT_EQ(*pairs.begin(), (Pair{3, 3}));
}

TEST(Generator, FifteenEncodesThreeTimesFive) {
  auto inst = generate_factoring_system(15, 2, 3);
  auto pairs = factor_pairs(inst);
  ASSERT_EQ(pairs.size(), 1u);
  EXPECT_EQ(*pairs.begin(), (Pair{3, 5}));
  // the DFS solver and plain enumeration see the same solutions
  EXPECT_EQ(brute_force_solutions(inst.system).size(), solve_exhaustive(inst.system).size());
}

TEST(Generator, RejectsBadRequests) {
  EXPECT_THROW(generate_factoring_system(8, 2, 2), DomainError);
  EXPECT_THROW(generate_factoring_system(7, 2, 2), DomainError);
  EXPECT_THROW(generate_factoring_system(15, 1, 4), DomainError);
  EXPECT_THROW(generate_factoring_system(15, 5, 5), DomainError);
}

TEST(Generator, UnsatisfiableWhenBitLengthsDoNotFit) {
  // both requests fit five bits; only 25 has a factorization
  auto inst = generate_factoring_system(25, 3, 3);
  EXPECT_EQ(factor_pairs(inst).size(), 1u);
  auto prime = generate_factoring_system(23, 3, 3);
  EXPECT_TRUE(solve_exhaustive(prime.system).empty());
}

TEST(Generator, CarryNamesFollowColumns) {
  auto inst = generate_factoring_system(841, 5, 5);
  const auto &names = inst.system.variables().names();
  EXPECT_NE(std::find(names.begin(), names.end(), "z23"), names.end());
  EXPECT_NE(std::find(names.begin(), names.end(), "p1"), names.end());
  EXPECT_EQ(std::find(names.begin(), names.end(), "p0"), names.end());
  EXPECT_EQ(std::find(names.begin(), names.end(), "p4"), names.end());
}

TEST(Generator, EightFortyOneAgreesWithShippedSystemOnFactors) {
  auto inst = generate_factoring_system(841, 5, 5);
  auto pairs = factor_pairs(inst);
  ASSERT_EQ(pairs.size(), 1u);
  EXPECT_EQ(*pairs.begin(), (Pair{29, 29}));

  auto shipped = load_system(kData + "/841.eqs");
  EXPECT_EQ(shipped.variables().size(), 16u);
  auto solutions = solve_exhaustive(shipped);
  ASSERT_EQ(solutions.size(), 1u);

  // the shipped system has q1 eliminated, so compare the bits both name
  auto generated = solve_exhaustive(inst.system);
  std::size_t shared = 0;
  for (VarIndex i = 0; i < shipped.variables().size(); ++i) {
    auto j = inst.system.variables().find(shipped.variables().name(i));
    if (j) {
      ++shared;
      EXPECT_EQ(solutions[0][i], generated[0][*j]) << shipped.variables().name(i);
    }
  }
  EXPECT_GE(shared, 5u);
}

TEST(Generator, FiveFiftyOneShippedSystemFactors) {
  auto shipped = load_system(kData + "/551.eqs");
  EXPECT_EQ(shipped.variables().size(), 17u);
  EXPECT_EQ(shipped.size(), 9u);
  auto inst = generate_factoring_system(551, 5, 5);
  std::set<std::pair<std::uint64_t, std::uint64_t>> got;
  for (const auto &x : solve_exhaustive(shipped))
    got.insert(inst.decode(x, shipped.variables()));
  EXPECT_EQ(got, (std::set<std::pair<std::uint64_t, std::uint64_t>>{{19, 29}, {29, 19}}));
  EXPECT_EQ(factor_pairs(inst), got);
}

TEST(Deductions, ZeroSumForcesZeros) {
  auto red = apply_simple_deductions(sys("x1 + x2 = 0"));
  EXPECT_TRUE(red.system.empty());
  EXPECT_EQ(red.system.variables().size(), 0u);
  ASSERT_EQ(red.deductions.size(), 2u);
  for (const auto &d : red.deductions) {
    EXPECT_EQ(d.kind(), Deduction::Kind::relation);
    EXPECT_TRUE(d.rhs().is_zero());
  }
  EXPECT_EQ(red.expand({}), (Assignment{false, false}));
}

TEST(Deductions, SingleVariableThenMaximum) {
  auto red = apply_simple_deductions(sys("p1 = 1\np1 + q1 = 2"));
  EXPECT_TRUE(red.system.empty());
  EXPECT_EQ(red.expand({}), (Assignment{true, true}));
  ASSERT_EQ(red.deductions.size(), 2u);
}

TEST(Deductions, NoRuleFiresOnToyEquation) {
  auto in = sys("x1 + x2 = x3 + 1");
  auto red = apply_simple_deductions(in);
  EXPECT_TRUE(red.deductions.empty());
  EXPECT_EQ(red.system, in);
}

TEST(Deductions, EqualitySubstitutesLaterVariable) {
  auto red = apply_simple_deductions(sys("a = b\na + b + c = 2"));
  ASSERT_FALSE(red.deductions.empty());
  EXPECT_EQ(red.system.variables().names(), (std::vector<std::string>{"a", "c"}));
  // 2a + c = 2 leaves only a = b = 1, c = 0
  EXPECT_EQ(brute_force_solutions(red.system).size(), 1u);
}

TEST(Deductions, ContradictionIsReported) {
  EXPECT_THROW(apply_simple_deductions(sys("x1 + x2 = 3")), Contradiction);
  EXPECT_THROW(apply_simple_deductions(sys("x1 = 1\nx1 = 0")), Contradiction);
}

TEST(Deductions, SolutionCountPreservedOnGeneratedSystems) {
  for (std::uint64_t n : {15u, 21u, 35u, 143u, 221u}) {
    auto width = static_cast<unsigned>(std::bit_width(n));
    for (unsigned pb = 2; pb < width; ++pb) {
      for (unsigned qb : {width - pb, width + 1 - pb}) {
        if (qb < 2)
          continue;
        auto inst = generate_factoring_system(n, pb, qb);
        auto before = solve_exhaustive(inst.system);
        try {
          auto red = apply_simple_deductions(inst.system);
          auto after = solve_exhaustive(red.system);
          ASSERT_EQ(before.size(), after.size()) << n << " " << pb << "x" << qb;
          for (const auto &x : after)
            ASSERT_TRUE(inst.system.satisfied_by(red.expand(x)));
        } catch (const Contradiction &) {
          ASSERT_TRUE(before.empty()) << n << " " << pb << "x" << qb;
        }
      }
    }
  }
}

TEST(Deductions, SolutionCountPreservedOnRandomSystems) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    auto s = elmkit::testing::random_satisfiable_system(rng, 2 + rng() % 10, 1 + rng() % 4);
    auto red = apply_simple_deductions(s);
    auto before = brute_force_solutions(s);
    auto after = brute_force_solutions(red.system);
    ASSERT_EQ(before.size(), after.size()) << format_system(s);
    std::set<std::uint64_t> lifted;
    for (auto i : after)
      lifted.insert(elmkit::testing::pack(red.expand(nth_assignment(i, red.system.variables().size()))));
    ASSERT_EQ(lifted, std::set<std::uint64_t>(before.begin(), before.end()));
  }
}

TEST(SystemFiles, LoadShippedSystems) {
  auto s841 = load_system(kData + "/841.eqs");
  EXPECT_EQ(s841.size(), 7u);
  VariableTable v = s841.variables();
  auto first = parse_polynomial("2*p1 + p2 + q2", v);
  EXPECT_EQ(s841.equations()[0].lhs, first);
  auto s551 = load_system(kData + "/551.eqs");
  EXPECT_EQ(format_system(s551).substr(0, 12), "p1 + q1 = 1\n");
}

TEST(SystemFiles, EmptyTextIsEmptySystem) {
  EXPECT_TRUE(parse_system("").empty());
  EXPECT_TRUE(parse_system("# only a comment\n\n").empty());
}

TEST(SystemFiles, SaveLoadRoundTrip) {
  auto path = std::filesystem::temp_directory_path() / "elmkit_roundtrip.eqs";
  for (const char *name : {"/toy.eqs", "/841.eqs", "/551.eqs"}) {
    auto s = load_system(kData + name);
    save_system(s, path.string());
    EXPECT_EQ(load_system(path.string()), s) << name;
    EXPECT_EQ(parse_system(format_system(s)), s);
  }
  std::filesystem::remove(path);
}

TEST(SystemFiles, ParseErrorCarriesLine) {
  try {
    parse_system("x1 = 1\n\nx1 + = 2\n");
    FAIL();
  } catch (const ParseError &e) {
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_THROW(parse_system("x1 + x2\n"), ParseError);
  EXPECT_THROW(parse_system("x1 = x2 = x3\n"), ParseError);
  EXPECT_THROW(load_system(kData + "/missing.eqs"), Error);
}

TEST(Hamiltonian, ToyLandscapeEndpoints) {
  auto toy = load_system(kData + "/toy.eqs");
  auto h0 = system_to_hamiltonian(toy);
  std::int64_t lo = INT64_MAX, hi = INT64_MIN;
  std::size_t zeros = 0;
  for (std::uint64_t i = 0; i < 8; ++i) {
    auto e = h0.evaluate(nth_assignment(i, 3));
    lo = std::min(lo, e);
    hi = std::max(hi, e);
    zeros += e == 0;
  }
  EXPECT_EQ(lo, 0);
  EXPECT_EQ(hi, 17);
  EXPECT_EQ(zeros, 1u);

  std::vector<std::int64_t> w{4, 1};
  auto h1 = system_to_hamiltonian(toy, std::span<const std::int64_t>(w));
  hi = 0;
  for (std::uint64_t i = 0; i < 8; ++i)
    hi = std::max(hi, h1.evaluate(nth_assignment(i, 3)));
  EXPECT_EQ(hi, 20);
}

TEST(Hamiltonian, EmptySystemAndBadWeights) {
  EXPECT_TRUE(system_to_hamiltonian(EquationSystem{}).is_zero());
  auto toy = load_system(kData + "/toy.eqs");
  std::vector<std::int64_t> zero{1, 0}, short_{1};
  EXPECT_THROW(system_to_hamiltonian(toy, std::span<const std::int64_t>(zero)), DomainError);
  EXPECT_THROW(system_to_hamiltonian(toy, std::span<const std::int64_t>(short_)), DomainError);
}

TEST(Hamiltonian, ZeroSetIsSolutionSet) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng() % 10;
    auto s = elmkit::testing::random_satisfiable_system(rng, n, 1 + rng() % 5);
    std::vector<std::int64_t> w(s.size());
    for (auto &x : w)
      x = 1 + static_cast<std::int64_t>(rng() % 9);
    auto h = system_to_hamiltonian(s, std::span<const std::int64_t>(w));
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << n); ++i) {
      auto x = nth_assignment(i, n);
      auto e = h.evaluate(x);
      ASSERT_GE(e, 0);
      ASSERT_EQ(e == 0, s.satisfied_by(x));
    }
  }
}

TEST(Equation, NormalizationMovesNegativeTerms) {
  VariableTable v;
  Equation e{parse_polynomial("x1 - x2", v), parse_polynomial("-1", v)};
  auto n = e.normalized();
  EXPECT_TRUE(n.is_normalized());
  EXPECT_EQ(n.residual(), e.residual());
  EXPECT_EQ(n.lhs, parse_polynomial("x1 + 1", v));
  EXPECT_EQ(n.rhs, parse_polynomial("x2", v));
}
