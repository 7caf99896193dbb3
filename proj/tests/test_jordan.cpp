#include <gtest/gtest.h>

#include "selfsim/jordan.hpp"

using namespace selfsim;

TEST(ConstructPhi, TernaryExample) {
  auto g = build_group(ternary_example_spec());
  const auto jc = construct_phi(g);
  EXPECT_EQ(jc.jordan.block_sizes, (std::vector<std::size_t>{2, 1, 1}));
  EXPECT_EQ(jc.phi.to_text(), "b -> d\nc -> 1\nd -> e\ne -> a\n");
  EXPECT_EQ(jc.a, g->a());
}

TEST(ConstructPhi, Preconditions) {
  EXPECT_THROW(construct_phi(build_group(parse_group_spec("p = 2\nH = 2\n"))), std::invalid_argument);
  // Elementary H, nonsplit: a^2 = b.
  EXPECT_THROW(construct_phi(build_group(parse_group_spec("p = 2\nH = 1\nh0 = 1\n"))), std::invalid_argument);
}

TEST(ConstructPhi, SplitWithNonzeroH0UsesOrderPComplement) {
  // a^3 = b, and b = (1 + alpha + alpha^2)(d), so a d^{-1} has order 3.
  auto g = build_group(parse_group_spec("p = 3\nH = 1,1,1\nalpha = 1,1,0; 0,1,1; 0,0,1\nh0 = 1,0,0\n"));
  ASSERT_TRUE(is_split(*g));
  const auto jc = construct_phi(g);
  EXPECT_EQ(g->element_order(g->a()), 9u);
  EXPECT_EQ(g->element_order(jc.a), 3u);
  EXPECT_TRUE(verify_construction(jc).holds());
}

TEST(VerifyConstruction, TernaryExample) {
  const auto jc = construct_phi(build_group(ternary_example_spec()));
  const auto r = verify_construction(jc);
  EXPECT_TRUE(r.exhaustive_subgroup_scan);
  EXPECT_TRUE(r.invariant_subspaces_meet_fixed_space);
  EXPECT_TRUE(r.fixed_space_pushed_out);
  EXPECT_LE(r.max_steps_to_exit, 3u);
  EXPECT_TRUE(r.core_trivial);
  EXPECT_TRUE(r.images_commute_with_order_p);
  EXPECT_TRUE(r.kernel_is_complement);
  EXPECT_TRUE(r.holds());
}

TEST(VerifyConstruction, IdentityAlpha) {
  const auto jc = construct_phi(build_group(parse_group_spec("p = 3\nH = 1,1\n")));
  const auto r = verify_construction(jc);
  EXPECT_TRUE(r.exhaustive_subgroup_scan);
  EXPECT_TRUE(r.holds());
  EXPECT_LE(r.max_steps_to_exit, 2u);
  EXPECT_TRUE(jc.phi.is_injective());
}

TEST(VerifyConstruction, SingleFullBlock) {
  const auto jc = construct_phi(build_group(parse_group_spec("p = 3\nH = 1,1,1\nalpha = 1,1,0; 0,1,1; 0,0,1\n")));
  EXPECT_EQ(jc.jordan.block_count(), 1u);
  EXPECT_TRUE(verify_construction(jc).holds());
  EXPECT_EQ(jc.phi.kernel().order(), 9u);
}

TEST(VerifyConstruction, ExhaustiveAndClosureScansAgree) {
  const auto jc = construct_phi(build_group(parse_group_spec("p = 2\nH = 1,1,1\nalpha = 1,1,0; 0,1,0; 0,0,1\n")));
  const auto full = verify_construction(jc, 1024);
  const auto cheap = verify_construction(jc, 1);
  EXPECT_TRUE(full.exhaustive_subgroup_scan);
  EXPECT_FALSE(cheap.exhaustive_subgroup_scan);
  EXPECT_EQ(full.invariant_subspaces_meet_fixed_space, cheap.invariant_subspaces_meet_fixed_space);
  EXPECT_TRUE(full.holds());
}
