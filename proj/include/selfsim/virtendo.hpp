#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "selfsim/groups.hpp"

namespace selfsim {

inline constexpr ElemId kNoImage = std::numeric_limits<ElemId>::max();

/// Graph criterion: the subgroup of G x G generated by the pairs
/// (gens[i], images[i]) meets {1} x G trivially. On success returns the graph
/// as a table over G (kNoImage outside <gens>).
std::optional<std::vector<ElemId>> homomorphism_graph(const ExtensionGroup& g, std::span<const ElemId> gens,
                                                      std::span<const ElemId> images);

/// A homomorphism from an index-p subgroup of G into G.
class VirtualEndo {
 public:
  /// Throws std::invalid_argument unless `gens` generate `domain`, the domain
  /// has index p and the assignment extends to a homomorphism.
  static VirtualEndo create(const Subgroup& domain, std::vector<ElemId> gens, std::vector<ElemId> images);
  /// Domain taken as the subgroup generated by `gens`.
  static VirtualEndo create(const GroupPtr& g, std::vector<ElemId> gens, std::vector<ElemId> images);

  const GroupPtr& group() const { return domain_.group(); }
  const ExtensionGroup& parent() const { return domain_.parent(); }
  const Subgroup& domain() const { return domain_; }
  const std::vector<ElemId>& dom_generators() const { return gens_; }
  const std::vector<ElemId>& images() const { return images_; }
  /// Table over G, kNoImage outside the domain.
  const std::vector<ElemId>& graph() const { return graph_; }

  /// Throws std::out_of_range for g outside the domain.
  ElemId evaluate(ElemId g) const;
  ElemId operator()(ElemId g) const { return evaluate(g); }

  Subgroup kernel() const;
  Subgroup image() const;
  bool is_injective() const;

  /// One `generator -> image` line per domain generator.
  std::string to_text() const;

 private:
  VirtualEndo(Subgroup domain, std::vector<ElemId> gens, std::vector<ElemId> images, std::vector<ElemId> graph)
      : domain_(std::move(domain)), gens_(std::move(gens)), images_(std::move(images)), graph_(std::move(graph)) {}
  friend std::uint64_t for_each_virtual_endo(const Subgroup&, const std::function<bool(const VirtualEndo&)>&);
  friend struct SimpleSearch find_simple(const Subgroup&, bool);

  Subgroup domain_;
  std::vector<ElemId> gens_;
  std::vector<ElemId> images_;
  std::vector<ElemId> graph_;
};

/// Structural consistency plus the graph criterion.
bool validate(const Subgroup& domain, std::span<const ElemId> gens, std::span<const ElemId> images);

ElemId evaluate(const VirtualEndo& phi, ElemId g);
Subgroup kernel(const VirtualEndo& phi);

/// {d in domain : phi(d) in s}.
Subgroup preimage(const VirtualEndo& phi, const Subgroup& s);
/// s lies in the domain and phi(s) is contained in s.
bool is_invariant(const VirtualEndo& phi, const Subgroup& s);

/// Largest normal subgroup of G inside the domain that phi maps into itself:
/// K_0 = normal_core(domain), K_{t+1} = normal_core(K_t meet phi^{-1}(K_t)).
Subgroup core(const VirtualEndo& phi);
/// Order of the core, computed on membership masks without building subgroups.
std::size_t core_order(const ExtensionGroup& g, const std::vector<std::uint8_t>& domain_mask,
                       const std::vector<ElemId>& graph);
bool is_simple(const VirtualEndo& phi);

/// Calls `visit` on every homomorphism from `domain` into G in lexicographic
/// order of the image tuple (by element id) over the minimal generating set
/// of the domain. Stops early when `visit` returns false. Returns the number
/// of homomorphisms visited.
std::uint64_t for_each_virtual_endo(const Subgroup& domain, const std::function<bool(const VirtualEndo&)>& visit);
std::vector<VirtualEndo> enumerate_virtual_endos(const Subgroup& domain);

struct SimpleSearch {
  std::optional<VirtualEndo> first;
  /// Homomorphisms visited. First-hit mode skips prefixes whose partial map
  /// already has a nontrivial core; count mode visits all of Hom(D, G).
  std::uint64_t homomorphisms = 0;
  /// Set only in count mode.
  std::optional<std::uint64_t> simple_count;
};

/// First simple phi on `domain` in enumeration order; with `count_all` the
/// enumeration runs to the end and counts every simple phi.
SimpleSearch find_simple(const Subgroup& domain, bool count_all = false);

/// Consequences of a simple, non-injective phi on a nonabelian G with kernel K
/// and t outside the domain.
struct PropKReport {
  bool kernel_core_trivial = false;
  bool conjugates_normal_in_domain = false;
  bool conjugate_intersection_trivial = false;
  std::size_t distinct_conjugates = 0;
  bool normalizer_is_domain = false;
  bool conjugates_nontrivial = false;
  /// d -> (d K^{t^i})_i is injective on the domain.
  bool embeds_in_quotient_product = false;

  bool holds(int p) const {
    return kernel_core_trivial && conjugates_normal_in_domain && conjugate_intersection_trivial &&
           distinct_conjugates == static_cast<std::size_t>(p) && normalizer_is_domain && conjugates_nontrivial &&
           embeds_in_quotient_product;
  }
};

/// Throws std::invalid_argument when phi is not simple, is injective, G is
/// abelian, or t lies in the domain.
PropKReport check_prop_K(const VirtualEndo& phi, ElemId t);

struct SplittingReport {
  /// Some x in H of order p with phi(x) outside H and of order p.
  std::optional<ElemId> witness;
  bool generated_by_order_p_is_normal = false;
  bool group_split = false;

  bool holds() const { return witness.has_value() && generated_by_order_p_is_normal && group_split; }
};

/// Requires phi simple with the distinguished H as domain.
SplittingReport check_splitting_lemma(const VirtualEndo& phi);

struct RegularImageReport {
  bool image_regular = false;
  bool group_split = false;
  bool domain_exponent_p = false;

  /// A regular image forces a split extension and exponent p.
  bool holds() const { return !image_regular || (group_split && domain_exponent_p); }
};

/// Requires phi simple with the distinguished H as domain.
RegularImageReport check_regular_image(const VirtualEndo& phi, std::size_t cap = 729);

/// Parses `g -> image` lines; the domain is the subgroup the left sides generate.
VirtualEndo parse_virtual_endo(const GroupPtr& g, std::string_view text);

}  // namespace selfsim
