#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "selfsim/groups.hpp"
#include "selfsim/virtendo.hpp"

namespace selfsim {

using Perm = std::vector<std::uint32_t>;
/// Vertex of the rooted k-ary tree, first letter at the top level.
using Vertex = std::vector<std::uint32_t>;

struct Letter {
  std::size_t gen;
  std::int64_t exp;
  bool operator==(const Letter&) const = default;
};
/// Product of generator powers; the empty word is the identity.
using Word = std::vector<Letter>;

/// g = pi_g (g|_0, ..., g|_{k-1}) for every generator g.
struct WreathRecursion {
  std::size_t degree = 0;
  std::vector<std::string> names;
  std::vector<Perm> root_perms;
  std::vector<std::vector<Word>> sections;

  std::size_t size() const { return names.size(); }
  /// Throws std::out_of_range for an undeclared name.
  std::size_t generator_index(std::string_view name) const;
  bool operator==(const WreathRecursion&) const = default;
};

/// Throws std::invalid_argument unless every root permutation is a bijection
/// and every section references declared generators.
void validate_recursion(const WreathRecursion& rec);

/// `name = (cycles)(s_0,...,s_{k-1})`, one generator per line; the
/// permutation is omitted when trivial and identity sections print as `1`.
std::string format_recursion(const WreathRecursion& rec);
WreathRecursion parse_recursion(std::string_view text);
std::string format_word(const WreathRecursion& rec, const Word& w);
Word parse_word(const WreathRecursion& rec, std::string_view text);

/// A virtual endomorphism together with a left transversal of its domain.
struct ActionContext {
  GroupPtr group;
  VirtualEndo phi;
  /// t_0 = 1.
  std::vector<ElemId> transversal;
  /// coset[g] = y with g in t_y * domain.
  std::vector<std::uint32_t> coset;

  std::size_t degree() const { return transversal.size(); }
  /// pi_g(x).
  std::uint32_t root_image(ElemId g, std::uint32_t x) const { return coset[group->mul(g, transversal[x])]; }
  /// g|_x = phi(t_y^{-1} g t_x) with y = pi_g(x).
  ElemId section(ElemId g, std::uint32_t x) const;
};

/// Transversal {1, t, ..., t^{p-1}} with t = a, or the first element outside
/// the domain when a lies in it.
ActionContext make_context(const VirtualEndo& phi);
/// Throws std::invalid_argument when `transversal` is not a left transversal
/// with t_0 = 1.
ActionContext make_context(const VirtualEndo& phi, std::vector<ElemId> transversal);

/// a^i followed by H generator powers, over the generator list (a, b, c, ...).
Word canonical_word(const ExtensionGroup& g, ElemId x);

/// Recursion over a and the generators of H, sections in canonical form.
WreathRecursion induced_recursion(const ActionContext& ctx);

/// g(xw) = pi_g(x) g|_x(w), with words acting on the left.
Vertex act(const WreathRecursion& rec, const Word& g, const Vertex& v);
/// Same action computed from the context's group elements.
Vertex act(const ActionContext& ctx, ElemId g, const Vertex& v);

/// Permutations of X^depth induced by each generator. Vertex index has the
/// top letter most significant.
std::vector<Perm> level_permutations(const WreathRecursion& rec, std::size_t depth);
Perm word_permutation(const std::vector<Perm>& level, const Word& w);

/// Largest depth used by default: 12 for k = 2, 8 for k = 3, otherwise the
/// largest d with k^d <= 6561.
std::size_t default_depth_cap(std::size_t degree);

/// Elements of G fixing every vertex of length `depth`, computed from the
/// permutations of X^depth.
Subgroup depth_kernel(const ActionContext& ctx, std::size_t depth);
/// Same, with each element acting through its canonical word in `rec`.
Subgroup depth_kernel(const GroupPtr& g, const WreathRecursion& rec, std::size_t depth);

struct StableKernel {
  Subgroup kernel;
  /// Least d >= 1 with K_{d+1} = K_d.
  std::size_t depth;
};

/// Iterates depth kernels until two consecutive levels agree, then checks two
/// further levels. Throws CapExceeded past `depth_cap` (0 selects the
/// default) and std::logic_error if the further levels disagree.
StableKernel stabilize_kernel(const ActionContext& ctx, std::size_t depth_cap = 0);
Subgroup stable_kernel(const ActionContext& ctx, std::size_t depth_cap = 0);

/// {g : pi_g(x) = x}.
Subgroup vertex_stabilizer(const ActionContext& ctx, std::uint32_t x);

/// n-fold iterated wreath product of C_p: a1 cycles the root, a_{j+1} = (a_j, 1, ..., 1).
WreathRecursion kpn_recursion(int p, int n);

/// Order of the permutation group generated on X^depth. Throws CapExceeded
/// when more than `cap` permutations are reached.
std::uint64_t group_order_by_closure(const WreathRecursion& rec, std::size_t depth,
                                     std::size_t cap = std::size_t{1} << 20);

/// Element of G obtained by evaluating the section of word `w` at letter `x`,
/// generators interpreted by name through G's canonical names.
ElemId section_element(const GroupPtr& g, const WreathRecursion& rec, const Word& w, std::uint32_t x);

/// h -> h|_0 on the stabilizer of vertex 0.
VirtualEndo virtual_endo_from_recursion(const GroupPtr& g, const WreathRecursion& rec);

}  // namespace selfsim
