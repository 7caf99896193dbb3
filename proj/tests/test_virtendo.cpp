#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "selfsim/errors.hpp"
#include "selfsim/groups.hpp"
#include "selfsim/jordan.hpp"
#include "selfsim/virtendo.hpp"

using namespace selfsim;

namespace {

GroupPtr ternary() { return build_group(ternary_example_spec()); }

VirtualEndo ternary_phi(const GroupPtr& g) { return parse_virtual_endo(g, "b -> d\nc -> 1\nd -> e\ne -> a\n"); }

// e_i -> e_{i-1} on C_p^m with H = <e_2, ..., e_m> and a = e_1.
VirtualEndo shift(int p, int m) {
  auto [g, h] = elementary_example_group(p, m);
  std::vector<ElemId> gens, images;
  for (int j = 0; j < m - 1; ++j) {
    std::vector<Residue> coords(static_cast<std::size_t>(m - 1), 0);
    coords[static_cast<std::size_t>(j)] = 1;
    gens.push_back(g->from_h(coords));
    images.push_back(j == 0 ? g->a() : gens[static_cast<std::size_t>(j - 1)]);
  }
  return VirtualEndo::create(h, gens, images);
}

VirtualEndo trivial_phi(const Subgroup& d) {
  const auto gens = minimal_generating_set(d);
  return VirtualEndo::create(d, gens, std::vector<ElemId>(gens.size(), 0));
}

}  // namespace

TEST(Validate, Examples) {
  auto g = ternary();
  const auto h = distinguished_subgroup(g);
  const auto gens = minimal_generating_set(h);
  EXPECT_TRUE(validate(h, gens, std::vector<ElemId>(gens.size(), 0)));
  const auto s = shift(3, 4);
  EXPECT_TRUE(validate(s.domain(), s.dom_generators(), s.images()));

  auto c8 = build_group(parse_group_spec("p = 2\nH = 2\nh0 = 1\n"));
  const auto c4 = distinguished_subgroup(c8);
  const std::vector<ElemId> x{c8->parse_element("b")};
  EXPECT_FALSE(validate(c4, x, std::vector<ElemId>{c8->a()}));
  EXPECT_THROW(VirtualEndo::create(c4, x, {c8->a()}), std::invalid_argument);
}

TEST(Evaluate, Examples) {
  auto g = ternary();
  const auto phi = ternary_phi(g);
  EXPECT_EQ(phi.evaluate(0), 0u);
  EXPECT_EQ(phi.evaluate(g->parse_element("c")), 0u);
  const ElemId b = g->parse_element("b"), d = g->parse_element("d");
  EXPECT_EQ(phi.evaluate(g->mul(b, d)), g->mul(phi.evaluate(b), phi.evaluate(d)));
  EXPECT_EQ(phi.evaluate(g->mul(b, d)), g->parse_element("de"));
  EXPECT_THROW(phi.evaluate(g->a()), std::out_of_range);
}

TEST(Evaluate, HomomorphismOnRandomPairs) {
  auto g = ternary();
  const auto phi = ternary_phi(g);
  const auto& elems = phi.domain().elements();
  std::mt19937 rng(11);
  std::uniform_int_distribution<std::size_t> d(0, elems.size() - 1);
  for (int i = 0; i < 1000; ++i) {
    const ElemId x = elems[d(rng)], y = elems[d(rng)];
    ASSERT_EQ(phi(g->mul(x, y)), g->mul(phi(x), phi(y)));
  }
}

TEST(Kernel, Examples) {
  auto g = ternary();
  const auto h = distinguished_subgroup(g);
  EXPECT_EQ(trivial_phi(h).kernel(), h);
  EXPECT_TRUE(shift(3, 4).kernel().is_trivial());
  const auto k = ternary_phi(g).kernel();
  EXPECT_EQ(k.order(), 3u);
  EXPECT_TRUE(k.contains(g->parse_element("c")));
}

TEST(Core, Examples) {
  auto g = ternary();
  const auto h = distinguished_subgroup(g);
  EXPECT_EQ(core(trivial_phi(h)), h);
  EXPECT_TRUE(core(shift(3, 4)).is_trivial());
  EXPECT_TRUE(core(shift(2, 5)).is_trivial());
  EXPECT_TRUE(core(ternary_phi(g)).is_trivial());
}

TEST(Core, MatchesOracles) {
  std::mt19937 rng(77);
  const char* specs[] = {"p = 2\nH = 1,1\nalpha = 1,1; 0,1\n", "p = 2\nH = 2,1\n", "p = 3\nH = 1,1\nalpha = 1,1; 0,1\n",
                         "p = 2\nH = 2\nalpha = 3\n", "p = 3\nH = 1,1,1\nalpha = 1,1,0; 0,1,1; 0,0,1\n"};
  for (const char* text : specs) {
    auto g = build_group(parse_group_spec(text));
    for (const auto& d : index_p_subgroups(g)) {
      const auto candidates = oracle::all_subgroups(*g, d.elements());
      const auto all = enumerate_virtual_endos(d);
      ASSERT_FALSE(all.empty());
      std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
      for (int i = 0; i < 25; ++i) {
        const auto& phi = all[pick(rng)];
        const auto c = core(phi);
        EXPECT_EQ(c.elements(), oracle::core_by_subgroup_scan(phi, candidates)) << text << phi.to_text();
        EXPECT_EQ(c.elements(), oracle::core_from_below(phi)) << text << phi.to_text();
        EXPECT_EQ(is_simple(phi), c.is_trivial());
      }
    }
  }
}

TEST(Core, ProductOfInvariantNormalsIsInvariantNormal) {
  auto g = build_group(parse_group_spec("p = 2\nH = 1,1,1\nalpha = 1,1,0; 0,1,0; 0,0,1\n"));
  for (const auto& phi : enumerate_virtual_endos(distinguished_subgroup(g))) {
    std::vector<std::vector<ElemId>> normals;
    for (ElemId x : phi.domain().elements())
      if (auto s = oracle::invariant_normal_closure(phi, x); !s.empty()) normals.push_back(std::move(s));
    for (std::size_t i = 0; i < normals.size(); ++i)
      for (std::size_t j = i; j < normals.size(); ++j) {
        const auto a = subgroup_from_elements(g, normals[i]);
        const auto b = subgroup_from_elements(g, normals[j]);
        const auto ab = product(a, b);
        ASSERT_TRUE(is_normal(ab));
        ASSERT_TRUE(phi.domain().contains(ab));
        ASSERT_TRUE(is_invariant(phi, ab));
      }
  }
}

TEST(IsSimple, Examples) {
  EXPECT_TRUE(is_simple(shift(3, 3)));
  auto g = ternary();
  EXPECT_FALSE(is_simple(trivial_phi(distinguished_subgroup(g))));
  auto d = dihedral(3);
  for (const auto& dom : index_p_subgroups(d))
    if (exponent(dom) == 8)
      for (const auto& phi : enumerate_virtual_endos(dom)) EXPECT_FALSE(is_simple(phi));
}

TEST(Enumerate, Counts) {
  // Trivial domain in C_3.
  auto c3 = build_group({3, AbelianPGroup(3, {}), FpMatrix(3, std::size_t{0}), {}});
  EXPECT_EQ(for_each_virtual_endo(distinguished_subgroup(c3), [](const VirtualEndo&) { return true; }), 1u);
  auto cp = build_group(parse_group_spec("p = 2\nH = 1\n"));
  EXPECT_EQ(enumerate_virtual_endos(distinguished_subgroup(cp)).size(), 4u);
}

TEST(Enumerate, CountsMatchOracle) {
  for (auto g : {dihedral(3), build_group(parse_group_spec("p = 3\nH = 1,1\nalpha = 1,1; 0,1\n")),
                 build_group(parse_group_spec("p = 2\nH = 2,1\nh0 = 2,0\n"))}) {
    for (const auto& d : index_p_subgroups(g)) {
      const auto gens = minimal_generating_set(d);
      EXPECT_EQ(enumerate_virtual_endos(d).size(), oracle::count_homomorphisms(*g, gens));
    }
  }
}

TEST(FindSimple, Examples) {
  auto g = ternary();
  const auto h = distinguished_subgroup(g);
  const auto search = find_simple(h);
  ASSERT_TRUE(search.first.has_value());
  EXPECT_TRUE(is_simple(*search.first));
  EXPECT_FALSE(search.simple_count.has_value());

  auto c8 = build_group(parse_group_spec("p = 2\nH = 2\nh0 = 1\n"));
  EXPECT_FALSE(find_simple(distinguished_subgroup(c8)).first.has_value());
  auto d4 = build_group(parse_group_spec("p = 2\nH = 2\nalpha = 3\n"));
  const auto counted = find_simple(distinguished_subgroup(d4), true);
  EXPECT_FALSE(counted.first.has_value());
  EXPECT_EQ(counted.simple_count, 0u);
}

TEST(FindSimple, JordanPhiIsAmongSimpleOnes) {
  auto g = build_group(parse_group_spec("p = 3\nH = 1,1\nalpha = 1,1; 0,1\n"));
  const auto jc = construct_phi(g);
  bool found = false;
  for_each_virtual_endo(distinguished_subgroup(g), [&](const VirtualEndo& phi) {
    if (phi.graph() == jc.phi.graph()) {
      found = is_simple(phi);
      return false;
    }
    return true;
  });
  EXPECT_TRUE(found);
}

TEST(PropK, TernaryExample) {
  auto g = ternary();
  const auto phi = ternary_phi(g);
  const auto r = check_prop_K(phi, g->a());
  EXPECT_TRUE(r.kernel_core_trivial);
  EXPECT_TRUE(r.conjugates_normal_in_domain);
  EXPECT_TRUE(r.conjugate_intersection_trivial);
  EXPECT_EQ(r.distinct_conjugates, 3u);
  EXPECT_TRUE(r.normalizer_is_domain);
  EXPECT_TRUE(r.embeds_in_quotient_product);
  EXPECT_TRUE(r.holds(3));
}

TEST(PropK, Preconditions) {
  auto g = ternary();
  EXPECT_THROW(check_prop_K(ternary_phi(g), 0), std::invalid_argument);
  const auto h = distinguished_subgroup(g);
  EXPECT_THROW(check_prop_K(trivial_phi(h), g->a()), std::invalid_argument);
  // Injective and simple, but G abelian.
  EXPECT_THROW(check_prop_K(shift(3, 4), shift(3, 4).parent().a()), std::invalid_argument);
}

TEST(SplittingLemma, HoldsOnEverySimplePhi) {
  for (const char* text : {"p = 2\nH = 1,1\nalpha = 1,1; 0,1\n", "p = 3\nH = 1,1\nalpha = 1,1; 0,1\n", "p = 2\nH = 1,1\n"}) {
    auto g = build_group(parse_group_spec(text));
    std::size_t simple = 0;
    for (const auto& phi : enumerate_virtual_endos(distinguished_subgroup(g))) {
      if (!is_simple(phi)) continue;
      ++simple;
      const auto r = check_splitting_lemma(phi);
      ASSERT_TRUE(r.holds()) << text << phi.to_text();
      ASSERT_NE(r.witness, std::nullopt);
      EXPECT_FALSE(g->in_h(phi(*r.witness)));
      EXPECT_EQ(g->element_order(phi(*r.witness)), static_cast<std::size_t>(g->p()));
      EXPECT_TRUE(check_regular_image(phi).holds());
    }
    EXPECT_GT(simple, 0u) << text;
  }
}

TEST(SplittingLemma, RejectsNonSimple) {
  auto g = ternary();
  EXPECT_THROW(check_splitting_lemma(trivial_phi(distinguished_subgroup(g))), std::invalid_argument);
}

TEST(Text, RoundTrip) {
  auto g = ternary();
  const auto phi = ternary_phi(g);
  EXPECT_EQ(phi.to_text(), "b -> d\nc -> 1\nd -> e\ne -> a\n");
  EXPECT_EQ(parse_virtual_endo(g, phi.to_text()).graph(), phi.graph());
  EXPECT_THROW(parse_virtual_endo(g, "b = d\n"), ParseError);
}
