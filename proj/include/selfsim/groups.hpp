#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "selfsim/fplinalg.hpp"

namespace selfsim {

/// Index of an element in the enumerated group, 0 is the identity.
using ElemId = std::uint32_t;

/// C_{p^{e_1}} x ... x C_{p^{e_n}}, elements are coordinate vectors.
class AbelianPGroup {
 public:
  AbelianPGroup(int p, std::vector<int> exponents);

  int p() const { return p_; }
  const std::vector<int>& exponents() const { return exponents_; }
  std::size_t rank() const { return exponents_.size(); }
  std::size_t order() const { return order_; }
  Residue modulus(std::size_t i) const { return moduli_[i]; }
  const std::vector<Residue>& moduli() const { return moduli_; }
  bool is_elementary() const;

  /// Mixed-radix index, coordinate 0 least significant. Coordinates are reduced first.
  std::size_t index_of(std::span<const Residue> h) const;
  Vector element(std::size_t index) const;
  Vector add(std::span<const Residue> x, std::span<const Residue> y) const;
  Vector zero() const { return Vector(rank(), 0); }

  bool operator==(const AbelianPGroup&) const = default;

 private:
  int p_;
  std::vector<int> exponents_;
  std::vector<Residue> moduli_;
  std::size_t order_ = 1;
};

/// Data of G = <a> H with a^p = h0 and a^{-1} h a = alpha(h).
struct ExtensionSpec {
  int p;
  AbelianPGroup H;
  FpMatrix alpha;
  Vector h0;
};

/// Throws std::invalid_argument naming the first violated condition.
void validate_spec(const ExtensionSpec& spec);

/// a^i h with 0 <= i < p.
struct GroupElement {
  Residue i = 0;
  Vector h;
  bool operator==(const GroupElement&) const = default;
};

class ExtensionGroup;
using GroupPtr = std::shared_ptr<const ExtensionGroup>;

/// A fully enumerated extension group. Element id = i * |H| + index(h), so
/// the elements of H are exactly the ids below |H|.
class ExtensionGroup : public std::enable_shared_from_this<ExtensionGroup> {
 public:
  static constexpr std::size_t kDefaultOrderCap = std::size_t{1} << 16;
  static constexpr std::size_t kTableCap = 2048;

  const ExtensionSpec& spec() const { return spec_; }
  int p() const { return spec_.p; }
  std::size_t order() const { return order_; }
  std::size_t h_order() const { return spec_.H.order(); }

  ElemId identity() const { return 0; }
  /// The complement generator (1, 0).
  ElemId a() const { return static_cast<ElemId>(h_order()); }
  /// Standard basis elements of H, in coordinate order.
  std::vector<ElemId> h_generators() const;
  /// a followed by the H generators.
  std::vector<ElemId> generators() const;

  ElemId mul(ElemId x, ElemId y) const {
    return table_.empty() ? mul_slow(x, y) : table_[static_cast<std::size_t>(x) * order_ + y];
  }
  ElemId inv(ElemId x) const { return inverse_[x]; }
  ElemId pow(ElemId x, std::int64_t k) const;
  /// g^{-1} x g.
  ElemId conj(ElemId x, ElemId g) const { return mul(mul(inv(g), x), g); }
  /// x^{-1} y^{-1} x y.
  ElemId commutator(ElemId x, ElemId y) const { return mul(mul(inv(x), inv(y)), mul(x, y)); }
  std::size_t element_order(ElemId x) const { return orders_[x]; }
  bool in_h(ElemId x) const { return x < h_order(); }
  bool is_abelian() const;

  GroupElement element(ElemId x) const;
  ElemId id_of(const GroupElement& g) const;
  ElemId from_h(std::span<const Residue> coords) const;

  /// Name of H generator j: b, c, d, ...
  static std::string h_generator_name(std::size_t j);
  /// Canonical form a^i followed by H generator powers, "1" for the identity.
  std::string format(ElemId x) const;
  /// Accepts products of a, H generator names, powers and "1", with optional
  /// '*' or whitespace between factors.
  ElemId parse_element(std::string_view text) const;

 private:
  friend GroupPtr build_group(ExtensionSpec spec, std::size_t order_cap);
  explicit ExtensionGroup(ExtensionSpec spec);
  ElemId mul_slow(ElemId x, ElemId y) const;

  ExtensionSpec spec_;
  std::size_t order_;
  // alpha_pow_[j * |H| + h] = index of alpha^j(h).
  std::vector<std::uint32_t> alpha_pow_;
  std::vector<ElemId> table_;
  std::vector<ElemId> inverse_;
  std::vector<std::uint32_t> orders_;
};

/// Validates the spec and materializes the group.
GroupPtr build_group(ExtensionSpec spec, std::size_t order_cap = ExtensionGroup::kDefaultOrderCap);

std::size_t element_order(const ExtensionGroup& g, ElemId x);

/// A subgroup stored as its sorted element set plus a generating set.
class Subgroup {
 public:
  /// `elements` must be sorted and closed; `generators` must generate it.
  Subgroup(GroupPtr group, std::vector<ElemId> elements, std::vector<ElemId> generators);

  const GroupPtr& group() const { return group_; }
  const ExtensionGroup& parent() const { return *group_; }
  std::size_t order() const { return elements_.size(); }
  std::size_t index() const { return group_->order() / elements_.size(); }
  bool contains(ElemId x) const { return mask_[x] != 0; }
  bool contains(const Subgroup& other) const;
  bool is_trivial() const { return elements_.size() == 1; }
  const std::vector<ElemId>& elements() const { return elements_; }
  const std::vector<ElemId>& generators() const { return generators_; }
  const std::vector<std::uint8_t>& mask() const { return mask_; }

  /// Same element set.
  bool operator==(const Subgroup& o) const { return elements_ == o.elements_; }

 private:
  GroupPtr group_;
  std::vector<ElemId> elements_;
  std::vector<ElemId> generators_;
  std::vector<std::uint8_t> mask_;
};

/// Smallest subgroup containing `gens`.
Subgroup closure(const GroupPtr& g, std::span<const ElemId> gens);
/// Wraps a closed element set; generators are extracted greedily in id order.
Subgroup subgroup_from_elements(const GroupPtr& g, std::vector<ElemId> elements);
/// Same, from a membership mask of size |G|.
Subgroup subgroup_from_mask(const GroupPtr& g, const std::vector<std::uint8_t>& mask);

Subgroup trivial_subgroup(const GroupPtr& g);
Subgroup whole_group(const GroupPtr& g);
/// {(0, h)}.
Subgroup distinguished_subgroup(const GroupPtr& g);

Subgroup intersection(const Subgroup& x, const Subgroup& y);
/// Product set xy; only a subgroup when one factor normalizes the other.
Subgroup product(const Subgroup& x, const Subgroup& y);
/// g^{-1} S g.
Subgroup conjugate(const Subgroup& s, ElemId g);
bool is_normal(const Subgroup& s);
/// Whether `s` is normal in the subgroup `ambient`.
bool is_normal_in(const Subgroup& s, const Subgroup& ambient);
/// Largest subgroup of `s` normal in G.
Subgroup normal_core(const Subgroup& s);
/// Smallest subgroup of `ambient` containing `xs` and normal in `ambient`.
Subgroup normal_closure(std::span<const ElemId> xs, const Subgroup& ambient);
Subgroup normalizer(const Subgroup& s);
Subgroup derived_subgroup(const Subgroup& s);
Subgroup center(const GroupPtr& g);
/// S^p [S, S].
Subgroup frattini_subgroup(const Subgroup& s);
/// Generators of `s` independent modulo its Frattini subgroup, chosen in id order.
std::vector<ElemId> minimal_generating_set(const Subgroup& s);
std::size_t exponent(const Subgroup& s);

/// Membership-mask form of normal_core for hot loops: removes elements of
/// `mask` whose conjugates under `gens` leave the set until it is stable.
/// `mask` must describe a subgroup; returns its new order.
std::size_t normal_core_in_place(const ExtensionGroup& g, std::span<const ElemId> gens,
                                 std::vector<std::uint8_t>& mask);

/// All subgroups of index p in `s` (the maximal subgroups of a p-group), as
/// kernels of the nonzero functionals on s / Frattini(s). Functionals are
/// normalized to leading coefficient 1 and taken in lexicographic order.
std::vector<Subgroup> index_p_subgroups(const Subgroup& s);
std::vector<Subgroup> index_p_subgroups(const GroupPtr& g);

/// Every subgroup of `s`, ordered by (order, elements). Throws CapExceeded
/// when |s| > cap.
std::vector<Subgroup> all_subgroups(const Subgroup& s, std::size_t cap = 1024);

/// Some element (i, h) with i != 0 has order p.
bool is_split(const ExtensionGroup& g);

/// Brute-force regularity test over all pairs of `s`.
bool is_regular(const Subgroup& s, std::size_t cap = 729);
bool is_regular_p_group(const GroupPtr& g, std::size_t cap = 729);

/// D_{2^n} = C_{2^n} extended by inversion, order 2^{n+1}, n >= 3.
GroupPtr dihedral(int n);

/// C_p^m as C_p^{m-1} extended trivially, with its subgroup <e_2, ..., e_m>.
std::pair<GroupPtr, Subgroup> elementary_example_group(int p, int m);

/// H = C_3^4 = <b, c, d, e>, c^a = bc, the other generators central.
ExtensionSpec ternary_example_spec();

/// Line-oriented `key = value` text with keys p, H, alpha, h0.
ExtensionSpec parse_group_spec(std::string_view text);
std::string format_group_spec(const ExtensionSpec& spec);

}  // namespace selfsim
