#include <gtest/gtest.h>

#include <regex>

#include "selfsim/errors.hpp"
#include "selfsim/harness.hpp"

using namespace selfsim;

namespace {

SweepConfig small_sweep(int p, std::size_t max_h) {
  SweepConfig cfg;
  cfg.primes = {p};
  cfg.max_h_order = {{p, max_h}};
  return cfg;
}

}  // namespace

TEST(Enumeration, AbelianGroupCounts) {
  // Partitions of 1..4.
  EXPECT_EQ(abelian_p_groups(2, 16).size(), 11u);
  EXPECT_EQ(abelian_p_groups(3, 27).size(), 6u);
  EXPECT_EQ(abelian_p_groups(3, 2).size(), 0u);
}

TEST(Enumeration, AutomorphismsOfOrderDividingP) {
  // On C_2^2: identity plus the three transvections.
  EXPECT_EQ(automorphisms_of_order_dividing_p(AbelianPGroup(2, {1, 1})).size(), 4u);
  // On C_4: identity and inversion.
  EXPECT_EQ(automorphisms_of_order_dividing_p(AbelianPGroup(2, {2})).size(), 2u);
  // On C_3^2: identity plus the 8 elements of order 3 in GL_2(3).
  EXPECT_EQ(automorphisms_of_order_dividing_p(AbelianPGroup(3, {1, 1})).size(), 9u);
  for (const auto& alpha : automorphisms_of_order_dividing_p(AbelianPGroup(2, {2, 1})))
    EXPECT_NO_THROW(validate_spec({2, AbelianPGroup(2, {2, 1}), alpha, {0, 0}}));
}

TEST(VerifyTheorem, SmallTwoGroups) {
  const auto verdicts = verify_theorem(small_sweep(2, 8));
  ASSERT_FALSE(verdicts.empty());
  std::size_t nonsplit = 0;
  for (const auto& v : verdicts) {
    EXPECT_TRUE(v.theorem_predicate());
    if (!v.split) {
      ++nonsplit;
      EXPECT_FALSE(v.simple_exists);
    }
    if (!v.elementary) EXPECT_FALSE(v.simple_exists);
  }
  EXPECT_GT(nonsplit, 0u);
}

TEST(VerifyTheorem, CyclicFourNeverAdmitsSimple) {
  const AbelianPGroup c4(2, {2});
  std::size_t cases = 0;
  for (const auto& alpha : automorphisms_of_order_dividing_p(c4))
    for (const auto& h0 : fixed_points(c4, alpha)) {
      const auto v = verify_case({2, c4, alpha, h0}, SweepConfig{});
      EXPECT_FALSE(v.simple_exists);
      ++cases;
    }
  // Identity fixes all of C_4, inversion fixes 0 and 2.
  EXPECT_EQ(cases, 6u);
}

TEST(VerifyTheorem, TernaryCase) {
  SweepConfig cfg;
  cfg.count_simple = false;
  const auto v = verify_case(ternary_example_spec(), cfg);
  EXPECT_TRUE(v.simple_exists);
  ASSERT_TRUE(v.constructed.has_value());
  EXPECT_EQ(v.constructed->to_text(), "b -> d\nc -> 1\nd -> e\ne -> a\n");
  EXPECT_TRUE(v.checks.construction_ran);
  EXPECT_TRUE(v.checks.all());
  EXPECT_GE(v.checks.prop_k_runs, 1u);
}

TEST(VerifyTheorem, ParallelMatchesSerial) {
  auto cfg = small_sweep(3, 9);
  cfg.count_simple = true;
  std::vector<std::string> serial, parallel;
  verify_theorem(cfg, [&](const CaseVerdict& v) { serial.push_back(format_case_record(v)); });
  cfg.threads = 4;
  verify_theorem(cfg, [&](const CaseVerdict& v) { parallel.push_back(format_case_record(v)); });
  EXPECT_EQ(serial, parallel);
  EXPECT_EQ(serial.size(), sweep_specs(cfg).size());
}

TEST(Report, RecordFormat) {
  SweepConfig cfg;
  cfg.count_simple = true;
  const auto v = verify_case(build_group(parse_group_spec("p = 2\nH = 1\n"))->spec(), cfg);
  const auto line = format_case_record(v);
  EXPECT_TRUE(std::regex_match(line, std::regex("case: p=2 H=1 alpha=[0-9a-f]{16} h0=0 split=1 elementary=1 "
                                                "simple_exists=1 simple_count=[0-9]+")))
      << line;
  EXPECT_EQ(alpha_hash(FpMatrix::identity(2, 1)), alpha_hash(FpMatrix::identity(2, 1)));
  EXPECT_NE(alpha_hash(FpMatrix::identity(2, 2)), alpha_hash(FpMatrix::from_rows(2, {{1, 1}, {0, 1}})));
}

TEST(Dihedral, NoSimplePhi) {
  const auto reports = verify_dihedral({3, 4});
  ASSERT_EQ(reports.size(), 2u);
  EXPECT_EQ(reports[0].sweep.domains.size(), 3u);
  for (const auto& r : reports) EXPECT_EQ(r.sweep.total_simple(), 0u);
}

TEST(Dihedral, OrderEightAdmitsSimplePhi) {
  // D_4 with cyclic H; its Klein four subgroups give simple phi.
  const auto sweep = sweep_domains(build_group(parse_group_spec("p = 2\nH = 2\nalpha = 3\n")));
  EXPECT_EQ(sweep.domains.size(), 3u);
  EXPECT_GT(sweep.total_simple(), 0u);
}

TEST(Example, TernaryReproduces) {
  const auto r = verify_ternary_example();
  EXPECT_TRUE(r.holds());
  EXPECT_EQ(r.recursion_text, kTernaryExampleTable);
}
