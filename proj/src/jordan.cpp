#include "selfsim/jordan.hpp"

#include <algorithm>
#include <stdexcept>

namespace selfsim {

namespace {

// a = (1, 0) when it has order p; otherwise the first order-p element of the
// coset aH. Either choice induces the same alpha on H because H is abelian.
ElemId complement_generator(const ExtensionGroup& g) {
  const auto p = static_cast<std::size_t>(g.p());
  if (g.element_order(g.a()) == p) return g.a();
  for (std::size_t x = g.h_order(); x < 2 * g.h_order(); ++x)
    if (g.element_order(static_cast<ElemId>(x)) == p) return static_cast<ElemId>(x);
  throw std::invalid_argument("construct_phi: the extension does not split");
}

}  // namespace

JordanConstruction construct_phi(const GroupPtr& g) {
  const auto& spec = g->spec();
  if (!spec.H.is_elementary()) throw std::invalid_argument("construct_phi: H is not elementary abelian");
  const ElemId a = complement_generator(*g);

  JordanData jd = unipotent_jordan(spec.alpha);
  std::vector<ElemId> basis;
  for (const auto& v : jd.basis) basis.push_back(g->from_h(v));

  std::vector<ElemId> images(basis.size(), 0);
  const std::size_t m = jd.block_count();
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t head = jd.block_offset(i);
    images[head] = i + 1 < m ? basis[jd.block_offset(i + 1)] : a;
  }
  auto phi = VirtualEndo::create(distinguished_subgroup(g), basis, images);
  return {g, std::move(jd), a, std::move(basis), std::move(phi)};
}

ConstructionReport verify_construction(const JordanConstruction& jc, std::size_t subgroup_cap) {
  const auto& g = *jc.group;
  const auto h = distinguished_subgroup(jc.group);
  const auto& jd = jc.jordan;
  const std::size_t m = jd.block_count();
  ConstructionReport r;

  std::vector<ElemId> fixed;
  for (ElemId x : h.elements())
    if (g.conj(x, jc.a) == x) fixed.push_back(x);
  auto meets_fixed = [&](const Subgroup& s) {
    return std::any_of(fixed.begin(), fixed.end(), [&](ElemId x) { return x != 0 && s.contains(x); });
  };

  if (h.order() <= subgroup_cap) {
    r.exhaustive_subgroup_scan = true;
    r.invariant_subspaces_meet_fixed_space = true;
    for (const auto& s : all_subgroups(h, subgroup_cap))
      if (!s.is_trivial() && is_normal(s) && !meets_fixed(s)) r.invariant_subspaces_meet_fixed_space = false;
  } else {
    // Every nontrivial invariant subspace contains the invariant closure of
    // one of its nonzero vectors.
    r.invariant_subspaces_meet_fixed_space = true;
    for (ElemId x : h.elements()) {
      if (x == 0) continue;
      std::vector<ElemId> orbit{x};
      for (int i = 1; i < g.p(); ++i) orbit.push_back(g.conj(orbit.back(), jc.a));
      if (!meets_fixed(closure(jc.group, orbit))) r.invariant_subspaces_meet_fixed_space = false;
    }
  }

  r.fixed_space_pushed_out = true;
  for (ElemId e : fixed) {
    if (e == 0) continue;
    ElemId x = e;
    std::size_t steps = 0;
    while (g.in_h(x) && steps < m) {
      x = jc.phi.evaluate(x);
      ++steps;
    }
    if (g.in_h(x)) r.fixed_space_pushed_out = false;
    r.max_steps_to_exit = std::max(r.max_steps_to_exit, steps);
  }

  r.core_trivial = core(jc.phi).is_trivial();

  std::vector<ElemId> targets;
  for (std::size_t i = 1; i < m; ++i) targets.push_back(jc.basis_elements[jd.block_offset(i)]);
  if (m > 0) targets.push_back(jc.a);
  r.images_commute_with_order_p = true;
  for (ElemId x : targets) {
    if (g.element_order(x) != static_cast<std::size_t>(g.p())) r.images_commute_with_order_p = false;
    for (ElemId y : targets)
      if (g.mul(x, y) != g.mul(y, x)) r.images_commute_with_order_p = false;
  }

  std::vector<ElemId> tail;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 1; j < jd.block_sizes[i]; ++j) tail.push_back(jc.basis_elements[jd.block_offset(i) + j]);
  const auto complement = closure(jc.group, tail);
  std::size_t expected = 1;
  for (std::size_t k = m; k < jd.basis.size(); ++k) expected *= static_cast<std::size_t>(g.p());
  const auto ker = jc.phi.kernel();
  r.kernel_is_complement = ker == complement && ker.order() == expected;
  return r;
}

}  // namespace selfsim
