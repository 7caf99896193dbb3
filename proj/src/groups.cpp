#include "selfsim/groups.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "selfsim/errors.hpp"

namespace selfsim {

namespace {

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<Residue> parse_int_list(std::string_view text, std::string_view what) {
  std::vector<Residue> out;
  text = trim(text);
  if (text.empty()) return out;
  while (true) {
    const auto comma = text.find(',');
    const auto cell = trim(text.substr(0, comma));
    Residue v = 0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size())
      throw ParseError("group spec: bad integer '" + std::string(cell) + "' in " + std::string(what));
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

std::vector<ElemId> sorted_from_mask(const std::vector<std::uint8_t>& mask) {
  std::vector<ElemId> out;
  for (std::size_t i = 0; i < mask.size(); ++i)
    if (mask[i]) out.push_back(static_cast<ElemId>(i));
  return out;
}

// Closes `mask`/`list` under right multiplication by `gens`.
void close_in_place(const ExtensionGroup& g, std::span<const ElemId> gens, std::vector<std::uint8_t>& mask,
                    std::vector<ElemId>& list) {
  for (std::size_t k = 0; k < list.size(); ++k) {
    const ElemId x = list[k];
    for (ElemId t : gens) {
      const ElemId y = g.mul(x, t);
      if (!mask[y]) {
        mask[y] = 1;
        list.push_back(y);
      }
    }
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// AbelianPGroup

AbelianPGroup::AbelianPGroup(int p, std::vector<int> exponents) : p_(p), exponents_(std::move(exponents)) {
  if (!is_prime(p)) throw std::invalid_argument("AbelianPGroup: p must be prime");
  for (int e : exponents_) {
    if (e < 1) throw std::invalid_argument("AbelianPGroup: exponents must be >= 1");
    Residue m = 1;
    for (int k = 0; k < e; ++k) m *= p;
    moduli_.push_back(m);
    order_ *= static_cast<std::size_t>(m);
  }
}

bool AbelianPGroup::is_elementary() const {
  return std::all_of(exponents_.begin(), exponents_.end(), [](int e) { return e == 1; });
}

std::size_t AbelianPGroup::index_of(std::span<const Residue> h) const {
  if (h.size() != rank()) throw std::invalid_argument("AbelianPGroup: coordinate count mismatch");
  std::size_t idx = 0;
  for (std::size_t i = rank(); i-- > 0;)
    idx = idx * static_cast<std::size_t>(moduli_[i]) + static_cast<std::size_t>(reduce(h[i], moduli_[i]));
  return idx;
}

Vector AbelianPGroup::element(std::size_t index) const {
  Vector h(rank());
  for (std::size_t i = 0; i < rank(); ++i) {
    const auto m = static_cast<std::size_t>(moduli_[i]);
    h[i] = static_cast<Residue>(index % m);
    index /= m;
  }
  return h;
}

Vector AbelianPGroup::add(std::span<const Residue> x, std::span<const Residue> y) const {
  Vector out(rank());
  for (std::size_t i = 0; i < rank(); ++i) out[i] = reduce(x[i] + y[i], moduli_[i]);
  return out;
}

// ---------------------------------------------------------------------------
// ExtensionSpec

void validate_spec(const ExtensionSpec& spec) {
  const auto& h = spec.H;
  if (!is_prime(spec.p)) throw std::invalid_argument("extension spec: p must be prime");
  if (h.p() != spec.p || spec.alpha.p() != spec.p) throw std::invalid_argument("extension spec: mismatched primes");
  if (spec.alpha.size() != h.rank() || spec.alpha.moduli() != h.moduli())
    throw std::invalid_argument("extension spec: alpha shape does not match H");
  if (spec.h0.size() != h.rank()) throw std::invalid_argument("extension spec: h0 has wrong length");

  // Column j is the image of generator j and must have order dividing p^{e_j}.
  for (std::size_t j = 0; j < h.rank(); ++j)
    for (std::size_t i = 0; i < h.rank(); ++i)
      if (reduce(spec.alpha.at(i, j) * h.modulus(j), h.modulus(i)) != 0)
        throw std::invalid_argument("extension spec: alpha is not an endomorphism of H");

  if (h.order() > ExtensionGroup::kDefaultOrderCap) throw CapExceeded("extension spec: |H| exceeds cap");
  std::vector<std::uint8_t> hit(h.order(), 0);
  for (std::size_t idx = 0; idx < h.order(); ++idx) {
    const auto img = h.index_of(spec.alpha.apply(h.element(idx)));
    if (hit[img]) throw std::invalid_argument("extension spec: alpha is not bijective on H");
    hit[img] = 1;
  }
  if (!spec.alpha.pow(static_cast<std::uint64_t>(spec.p)).is_identity())
    throw std::invalid_argument("extension spec: alpha^p is not the identity");
  Vector h0(spec.h0);
  for (std::size_t i = 0; i < h0.size(); ++i) h0[i] = reduce(h0[i], h.modulus(i));
  if (spec.alpha.apply(h0) != h0) throw std::invalid_argument("extension spec: h0 is not fixed by alpha");
}

// ---------------------------------------------------------------------------
// ExtensionGroup

ExtensionGroup::ExtensionGroup(ExtensionSpec spec)
    : spec_(std::move(spec)), order_(static_cast<std::size_t>(spec_.p) * spec_.H.order()) {
  for (std::size_t i = 0; i < spec_.h0.size(); ++i) spec_.h0[i] = reduce(spec_.h0[i], spec_.H.modulus(i));

  const std::size_t nh = h_order();
  const auto p = static_cast<std::size_t>(spec_.p);
  alpha_pow_.resize(p * nh);
  for (std::size_t h = 0; h < nh; ++h) alpha_pow_[h] = static_cast<std::uint32_t>(h);
  for (std::size_t j = 1; j < p; ++j)
    for (std::size_t h = 0; h < nh; ++h) {
      const auto prev = spec_.H.element(alpha_pow_[(j - 1) * nh + h]);
      alpha_pow_[j * nh + h] = static_cast<std::uint32_t>(spec_.H.index_of(spec_.alpha.apply(prev)));
    }

  if (order_ <= kTableCap) {
    table_.resize(order_ * order_);
    for (std::size_t x = 0; x < order_; ++x)
      for (std::size_t y = 0; y < order_; ++y)
        table_[x * order_ + y] = mul_slow(static_cast<ElemId>(x), static_cast<ElemId>(y));
  }

  orders_.resize(order_);
  inverse_.resize(order_);
  for (std::size_t x = 0; x < order_; ++x) {
    const auto gx = static_cast<ElemId>(x);
    // Walk x, x^2, ... remembering the last power before the identity.
    ElemId y = gx;
    ElemId before = 0;
    std::uint32_t k = 1;
    while (y != 0) {
      before = y;
      y = mul(y, gx);
      ++k;
    }
    orders_[x] = x == 0 ? 1 : k;
    inverse_[x] = before;
  }
}

ElemId ExtensionGroup::mul_slow(ElemId x, ElemId y) const {
  const std::size_t nh = h_order();
  const std::size_t i = x / nh, hx = x % nh;
  const std::size_t j = y / nh, hy = y % nh;
  const auto p = static_cast<std::size_t>(spec_.p);
  const auto& hgrp = spec_.H;
  Vector h = hgrp.add(hgrp.element(alpha_pow_[j * nh + hx]), hgrp.element(hy));
  if (i + j >= p) h = hgrp.add(h, spec_.h0);
  return static_cast<ElemId>(((i + j) % p) * nh + hgrp.index_of(h));
}

ElemId ExtensionGroup::pow(ElemId x, std::int64_t k) const {
  if (k < 0) {
    x = inv(x);
    k = -k;
  }
  ElemId result = 0;
  ElemId base = x;
  for (; k > 0; k >>= 1) {
    if (k & 1) result = mul(result, base);
    base = mul(base, base);
  }
  return result;
}

std::vector<ElemId> ExtensionGroup::h_generators() const {
  std::vector<ElemId> out;
  for (std::size_t j = 0; j < spec_.H.rank(); ++j) {
    Vector e(spec_.H.rank(), 0);
    e[j] = 1;
    out.push_back(from_h(e));
  }
  return out;
}

std::vector<ElemId> ExtensionGroup::generators() const {
  std::vector<ElemId> out{a()};
  for (ElemId x : h_generators()) out.push_back(x);
  return out;
}

bool ExtensionGroup::is_abelian() const {
  const auto gens = generators();
  for (ElemId x : gens)
    for (ElemId y : gens)
      if (mul(x, y) != mul(y, x)) return false;
  return true;
}

GroupElement ExtensionGroup::element(ElemId x) const {
  const std::size_t nh = h_order();
  return {static_cast<Residue>(x / nh), spec_.H.element(x % nh)};
}

ElemId ExtensionGroup::id_of(const GroupElement& g) const {
  return static_cast<ElemId>(static_cast<std::size_t>(reduce(g.i, spec_.p)) * h_order() + spec_.H.index_of(g.h));
}

ElemId ExtensionGroup::from_h(std::span<const Residue> coords) const {
  return static_cast<ElemId>(spec_.H.index_of(coords));
}

std::string ExtensionGroup::h_generator_name(std::size_t j) {
  if (j >= 25) throw std::invalid_argument("at most 25 named generators of H are supported");
  return std::string(1, static_cast<char>('b' + j));
}

std::string ExtensionGroup::format(ElemId x) const {
  const auto g = element(x);
  std::string out;
  auto factor = [&](const std::string& name, Residue e) {
    if (e == 0) return;
    out += name;
    if (e != 1) out += "^" + std::to_string(e);
  };
  factor("a", g.i);
  for (std::size_t j = 0; j < g.h.size(); ++j) factor(h_generator_name(j), g.h[j]);
  return out.empty() ? "1" : out;
}

ElemId ExtensionGroup::parse_element(std::string_view text) const {
  ElemId result = 0;
  std::size_t k = 0;
  bool any = false;
  while (k < text.size()) {
    const char ch = text[k];
    if (std::isspace(static_cast<unsigned char>(ch)) || ch == '*') {
      ++k;
      continue;
    }
    ElemId base = 0;
    if (ch == '1') {
      ++k;
    } else if (ch == 'a') {
      base = a();
      ++k;
    } else if (ch >= 'b' && static_cast<std::size_t>(ch - 'b') < spec_.H.rank()) {
      base = h_generators()[static_cast<std::size_t>(ch - 'b')];
      ++k;
    } else {
      throw ParseError("element: unexpected '" + std::string(1, ch) + "' in '" + std::string(text) + "'");
    }
    std::int64_t e = 1;
    if (k < text.size() && text[k] == '^') {
      ++k;
      std::size_t end = k;
      if (end < text.size() && text[end] == '-') ++end;
      while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end]))) ++end;
      auto [ptr, ec] = std::from_chars(text.data() + k, text.data() + end, e);
      if (ec != std::errc() || ptr != text.data() + end)
        throw ParseError("element: bad exponent in '" + std::string(text) + "'");
      k = end;
    }
    result = mul(result, pow(base, e));
    any = true;
  }
  if (!any) throw ParseError("element: empty text");
  return result;
}

GroupPtr build_group(ExtensionSpec spec, std::size_t order_cap) {
  validate_spec(spec);
  if (static_cast<std::size_t>(spec.p) * spec.H.order() > order_cap)
    throw CapExceeded("build_group: group order exceeds cap");
  return GroupPtr(new ExtensionGroup(std::move(spec)));
}

std::size_t element_order(const ExtensionGroup& g, ElemId x) { return g.element_order(x); }

// ---------------------------------------------------------------------------
// Subgroups

Subgroup::Subgroup(GroupPtr group, std::vector<ElemId> elements, std::vector<ElemId> generators)
    : group_(std::move(group)),
      elements_(std::move(elements)),
      generators_(std::move(generators)),
      mask_(group_->order(), 0) {
  for (ElemId x : elements_) mask_[x] = 1;
}

bool Subgroup::contains(const Subgroup& other) const {
  return std::all_of(other.elements_.begin(), other.elements_.end(), [&](ElemId x) { return contains(x); });
}

Subgroup closure(const GroupPtr& g, std::span<const ElemId> gens) {
  std::vector<std::uint8_t> mask(g->order(), 0);
  std::vector<ElemId> list{0};
  mask[0] = 1;
  close_in_place(*g, gens, mask, list);
  std::sort(list.begin(), list.end());
  std::vector<ElemId> kept;
  for (ElemId x : gens)
    if (x != 0) kept.push_back(x);
  return Subgroup(g, std::move(list), std::move(kept));
}

Subgroup subgroup_from_elements(const GroupPtr& g, std::vector<ElemId> elements) {
  std::sort(elements.begin(), elements.end());
  std::vector<std::uint8_t> mask(g->order(), 0);
  std::vector<ElemId> list{0};
  mask[0] = 1;
  std::vector<ElemId> gens;
  for (ElemId x : elements) {
    if (mask[x]) continue;
    gens.push_back(x);
    // Elements already present must also be multiplied by the new generator.
    const ElemId t = x;
    const std::size_t old = list.size();
    for (std::size_t k = 0; k < old; ++k) {
      const ElemId y = g->mul(list[k], t);
      if (!mask[y]) {
        mask[y] = 1;
        list.push_back(y);
      }
    }
    close_in_place(*g, gens, mask, list);
  }
  if (list.size() != elements.size()) throw std::invalid_argument("subgroup_from_elements: set is not a subgroup");
  return Subgroup(g, std::move(elements), std::move(gens));
}

Subgroup subgroup_from_mask(const GroupPtr& g, const std::vector<std::uint8_t>& mask) {
  return subgroup_from_elements(g, sorted_from_mask(mask));
}

Subgroup trivial_subgroup(const GroupPtr& g) { return Subgroup(g, {0}, {}); }

Subgroup whole_group(const GroupPtr& g) {
  std::vector<ElemId> all(g->order());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<ElemId>(i);
  return Subgroup(g, std::move(all), g->generators());
}

Subgroup distinguished_subgroup(const GroupPtr& g) {
  std::vector<ElemId> hs(g->h_order());
  for (std::size_t i = 0; i < hs.size(); ++i) hs[i] = static_cast<ElemId>(i);
  return Subgroup(g, std::move(hs), g->h_generators());
}

Subgroup intersection(const Subgroup& x, const Subgroup& y) {
  std::vector<ElemId> out;
  std::set_intersection(x.elements().begin(), x.elements().end(), y.elements().begin(), y.elements().end(),
                        std::back_inserter(out));
  return subgroup_from_elements(x.group(), std::move(out));
}

Subgroup product(const Subgroup& x, const Subgroup& y) {
  const auto& g = x.parent();
  std::vector<std::uint8_t> mask(g.order(), 0);
  for (ElemId u : x.elements())
    for (ElemId v : y.elements()) mask[g.mul(u, v)] = 1;
  return subgroup_from_mask(x.group(), mask);
}

Subgroup conjugate(const Subgroup& s, ElemId t) {
  const auto& g = s.parent();
  std::vector<ElemId> out;
  out.reserve(s.order());
  for (ElemId x : s.elements()) out.push_back(g.conj(x, t));
  std::vector<ElemId> gens;
  for (ElemId x : s.generators()) gens.push_back(g.conj(x, t));
  std::sort(out.begin(), out.end());
  return Subgroup(s.group(), std::move(out), std::move(gens));
}

bool is_normal_in(const Subgroup& s, const Subgroup& ambient) {
  const auto& g = s.parent();
  for (ElemId t : ambient.generators())
    for (ElemId x : s.generators())
      if (!s.contains(g.conj(x, t))) return false;
  return true;
}

bool is_normal(const Subgroup& s) { return is_normal_in(s, whole_group(s.group())); }

std::size_t normal_core_in_place(const ExtensionGroup& g, std::span<const ElemId> gens,
                                 std::vector<std::uint8_t>& mask) {
  std::vector<ElemId> live;
  for (std::size_t i = 0; i < mask.size(); ++i)
    if (mask[i]) live.push_back(static_cast<ElemId>(i));
  bool changed = true;
  while (changed) {
    changed = false;
    std::size_t keep = 0;
    for (ElemId x : live) {
      bool stays = true;
      for (ElemId t : gens)
        if (!mask[g.conj(x, t)]) {
          stays = false;
          break;
        }
      if (stays) {
        live[keep++] = x;
      } else {
        mask[x] = 0;
        changed = true;
      }
    }
    live.resize(keep);
  }
  return live.size();
}

Subgroup normal_core(const Subgroup& s) {
  auto mask = s.mask();
  const auto gens = s.parent().generators();
  normal_core_in_place(s.parent(), gens, mask);
  return subgroup_from_mask(s.group(), mask);
}

Subgroup normal_closure(std::span<const ElemId> xs, const Subgroup& ambient) {
  const auto& g = ambient.parent();
  std::vector<ElemId> gens(xs.begin(), xs.end());
  Subgroup current = closure(ambient.group(), gens);
  while (true) {
    bool grew = false;
    for (ElemId t : ambient.generators()) {
      for (ElemId x : std::vector<ElemId>(current.generators())) {
        const ElemId y = g.conj(x, t);
        if (!current.contains(y)) {
          gens.push_back(y);
          current = closure(ambient.group(), gens);
          grew = true;
        }
      }
    }
    if (!grew) return current;
  }
}

Subgroup normalizer(const Subgroup& s) {
  const auto& g = s.parent();
  std::vector<ElemId> out;
  for (std::size_t t = 0; t < g.order(); ++t) {
    bool ok = true;
    for (ElemId x : s.generators())
      if (!s.contains(g.conj(x, static_cast<ElemId>(t)))) {
        ok = false;
        break;
      }
    if (ok) out.push_back(static_cast<ElemId>(t));
  }
  return subgroup_from_elements(s.group(), std::move(out));
}

Subgroup derived_subgroup(const Subgroup& s) {
  const auto& g = s.parent();
  std::vector<ElemId> comms;
  const auto& gens = s.generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      const ElemId c = g.commutator(gens[i], gens[j]);
      if (c != 0) comms.push_back(c);
    }
  return normal_closure(comms, s);
}

Subgroup center(const GroupPtr& g) {
  const auto gens = g->generators();
  std::vector<ElemId> out;
  for (std::size_t x = 0; x < g->order(); ++x) {
    const auto gx = static_cast<ElemId>(x);
    if (std::all_of(gens.begin(), gens.end(), [&](ElemId t) { return g->mul(gx, t) == g->mul(t, gx); }))
      out.push_back(gx);
  }
  return subgroup_from_elements(g, std::move(out));
}

Subgroup frattini_subgroup(const Subgroup& s) {
  const auto& g = s.parent();
  const auto derived = derived_subgroup(s);
  std::vector<ElemId> gens(derived.generators());
  std::vector<std::uint8_t> seen(g.order(), 0);
  for (ElemId x : s.elements()) {
    const ElemId y = g.pow(x, g.p());
    if (y != 0 && !seen[y]) {
      seen[y] = 1;
      gens.push_back(y);
    }
  }
  const auto phi = closure(s.group(), gens);
  return subgroup_from_elements(s.group(), phi.elements());
}

std::vector<ElemId> minimal_generating_set(const Subgroup& s) {
  const auto phi = frattini_subgroup(s);
  std::vector<ElemId> chosen;
  std::vector<ElemId> span_gens(phi.generators());
  Subgroup current = phi;
  for (ElemId x : s.elements()) {
    if (current.order() == s.order()) break;
    if (current.contains(x)) continue;
    chosen.push_back(x);
    span_gens.push_back(x);
    current = closure(s.group(), span_gens);
  }
  return chosen;
}

std::size_t exponent(const Subgroup& s) {
  std::size_t e = 1;
  for (ElemId x : s.elements()) e = std::max(e, s.parent().element_order(x));
  return e;
}

std::vector<Subgroup> index_p_subgroups(const Subgroup& s) {
  const auto& g = s.parent();
  const auto p = static_cast<std::size_t>(g.p());
  const auto phi = frattini_subgroup(s);
  const auto basis = minimal_generating_set(s);
  const std::size_t r = basis.size();

  std::size_t cosets = 1;
  for (std::size_t i = 0; i < r; ++i) cosets *= p;
  if (cosets * phi.order() != s.order()) throw std::logic_error("index_p_subgroups: Frattini quotient mismatch");

  // coord[x] encodes the image of x in s / phi, digit i = coefficient of basis[i].
  std::vector<std::size_t> coord(g.order(), 0);
  for (std::size_t c = 0; c < cosets; ++c) {
    ElemId rep = 0;
    std::size_t rest = c;
    for (std::size_t i = 0; i < r; ++i) {
      rep = g.mul(rep, g.pow(basis[i], static_cast<std::int64_t>(rest % p)));
      rest /= p;
    }
    for (ElemId f : phi.elements()) coord[g.mul(rep, f)] = c;
  }

  auto digits = [&](std::size_t c) {
    std::vector<std::size_t> d(r);
    for (std::size_t i = 0; i < r; ++i) {
      d[i] = c % p;
      c /= p;
    }
    return d;
  };

  std::vector<Subgroup> out;
  for (std::size_t code = 1; code < cosets; ++code) {
    // Functional coefficients with the first coefficient (digit 0) most significant.
    std::vector<std::size_t> lambda(r);
    std::size_t rest = code;
    for (std::size_t i = r; i-- > 0;) {
      lambda[i] = rest % p;
      rest /= p;
    }
    const auto lead = std::find_if(lambda.begin(), lambda.end(), [](std::size_t v) { return v != 0; });
    if (*lead != 1) continue;
    std::vector<ElemId> members;
    for (ElemId x : s.elements()) {
      const auto d = digits(coord[x]);
      std::size_t acc = 0;
      for (std::size_t i = 0; i < r; ++i) acc += lambda[i] * d[i];
      if (acc % p == 0) members.push_back(x);
    }
    out.push_back(subgroup_from_elements(s.group(), std::move(members)));
  }
  return out;
}

std::vector<Subgroup> index_p_subgroups(const GroupPtr& g) { return index_p_subgroups(whole_group(g)); }

std::vector<Subgroup> all_subgroups(const Subgroup& s, std::size_t cap) {
  if (s.order() > cap) throw CapExceeded("all_subgroups: subgroup order exceeds cap");
  std::set<std::vector<ElemId>> seen;
  std::vector<Subgroup> found{trivial_subgroup(s.group())};
  seen.insert(found.front().elements());
  for (std::size_t k = 0; k < found.size(); ++k) {
    const std::vector<ElemId> base_gens = found[k].generators();
    const std::vector<std::uint8_t> base_mask = found[k].mask();
    for (ElemId x : s.elements()) {
      if (base_mask[x]) continue;
      auto gens = base_gens;
      gens.push_back(x);
      auto t = closure(s.group(), gens);
      if (seen.insert(t.elements()).second) found.push_back(std::move(t));
    }
  }
  std::sort(found.begin(), found.end(), [](const Subgroup& x, const Subgroup& y) {
    return x.order() != y.order() ? x.order() < y.order() : x.elements() < y.elements();
  });
  return found;
}

bool is_split(const ExtensionGroup& g) {
  for (std::size_t x = g.h_order(); x < g.order(); ++x)
    if (g.element_order(static_cast<ElemId>(x)) == static_cast<std::size_t>(g.p())) return true;
  return false;
}

bool is_regular(const Subgroup& s, std::size_t cap) {
  if (s.order() > cap) throw CapExceeded("is_regular: subgroup order exceeds cap");
  const auto& g = s.parent();
  const int p = g.p();
  for (ElemId x : s.elements())
    for (ElemId y : s.elements()) {
      const ElemId xy = g.mul(x, y);
      if (xy == g.mul(y, x)) continue;  // c = 1 works
      const ElemId lhs = g.pow(xy, p);
      const ElemId rhs = g.mul(g.pow(x, p), g.pow(y, p));
      const ElemId need = g.mul(g.inv(rhs), lhs);
      const std::vector<ElemId> pair{x, y};
      const auto sub = closure(s.group(), pair);
      const auto derived = derived_subgroup(sub);
      bool ok = false;
      for (ElemId c : derived.elements())
        if (g.pow(c, p) == need) {
          ok = true;
          break;
        }
      if (!ok) return false;
    }
  return true;
}

bool is_regular_p_group(const GroupPtr& g, std::size_t cap) { return is_regular(whole_group(g), cap); }

GroupPtr dihedral(int n) {
  if (n < 3) throw std::invalid_argument("dihedral: n must be >= 3");
  AbelianPGroup h(2, {n});
  auto alpha = FpMatrix::from_rows(2, {{-1}}, h.moduli());
  return build_group({2, h, alpha, h.zero()});
}

std::pair<GroupPtr, Subgroup> elementary_example_group(int p, int m) {
  if (m < 2) throw std::invalid_argument("elementary_example_group: m must be >= 2");
  AbelianPGroup h(p, std::vector<int>(static_cast<std::size_t>(m - 1), 1));
  auto g = build_group({p, h, FpMatrix::identity(p, h.rank()), h.zero()});
  auto sub = distinguished_subgroup(g);
  return {g, sub};
}

ExtensionSpec ternary_example_spec() {
  AbelianPGroup h(3, {1, 1, 1, 1});
  auto alpha = FpMatrix::from_rows(3, {{1, 1, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
  return {3, h, alpha, h.zero()};
}

ExtensionSpec parse_group_spec(std::string_view text) {
  std::map<std::string, std::string> values;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view(line);
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos)
      throw ParseError("group spec line " + std::to_string(lineno) + ": expected 'key = value'");
    std::string key(trim(view.substr(0, eq)));
    if (key != "p" && key != "H" && key != "alpha" && key != "h0")
      throw ParseError("group spec line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    if (values.count(key)) throw ParseError("group spec: duplicate key '" + key + "'");
    values[key] = std::string(trim(view.substr(eq + 1)));
  }
  if (!values.count("p") || !values.count("H")) throw ParseError("group spec: keys 'p' and 'H' are required");

  const auto pv = parse_int_list(values["p"], "p");
  if (pv.size() != 1) throw ParseError("group spec: p must be a single integer");
  const int p = static_cast<int>(pv[0]);
  std::vector<int> exps;
  for (Residue e : parse_int_list(values["H"], "H")) exps.push_back(static_cast<int>(e));

  try {
    AbelianPGroup h(p, exps);
    FpMatrix alpha = FpMatrix::identity(p, h.moduli());
    if (values.count("alpha")) {
      auto rows = parse_matrix_literal(values["alpha"]);
      if (rows.size() != h.rank()) throw ParseError("group spec: alpha size does not match H");
      alpha = FpMatrix::from_rows(p, rows, h.moduli());
    }
    Vector h0 = h.zero();
    if (values.count("h0")) {
      h0 = parse_int_list(values["h0"], "h0");
      if (h0.size() != h.rank()) throw ParseError("group spec: h0 length does not match H");
    }
    return {p, h, alpha, h0};
  } catch (const ParseError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("group spec: ") + e.what());
  }
}

std::string format_group_spec(const ExtensionSpec& spec) {
  std::ostringstream os;
  os << "p = " << spec.p << "\nH = ";
  for (std::size_t i = 0; i < spec.H.rank(); ++i) os << (i ? "," : "") << spec.H.exponents()[i];
  os << "\nalpha = " << spec.alpha.to_literal() << "\nh0 = ";
  for (std::size_t i = 0; i < spec.h0.size(); ++i) os << (i ? "," : "") << spec.h0[i];
  os << "\n";
  return os.str();
}

}  // namespace selfsim
