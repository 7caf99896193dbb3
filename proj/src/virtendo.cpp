#include "selfsim/virtendo.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "selfsim/errors.hpp"

namespace selfsim {

namespace {

// Runs the graph closure from (1, 1) under right multiplication by the
// generator pairs. `touched` lists the entries of `graph` that were set so a
// caller can reset them cheaply.
bool close_graph(const ExtensionGroup& g, std::span<const ElemId> gens, std::span<const ElemId> images,
                 std::vector<ElemId>& graph, std::vector<ElemId>& touched) {
  for (ElemId x : touched) graph[x] = kNoImage;
  touched.clear();
  graph[0] = 0;
  touched.push_back(0);
  for (std::size_t k = 0; k < touched.size(); ++k) {
    const ElemId u = touched[k];
    const ElemId fu = graph[u];
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const ElemId v = g.mul(u, gens[i]);
      const ElemId fv = g.mul(fu, images[i]);
      if (graph[v] == kNoImage) {
        graph[v] = fv;
        touched.push_back(v);
      } else if (graph[v] != fv) {
        return false;
      }
    }
  }
  return true;
}

// Nontrivial elements of `domain` central in G, each with its cyclic subgroup.
std::vector<std::vector<ElemId>> central_lines(const Subgroup& domain) {
  const auto& g = domain.parent();
  const auto gens = g.generators();
  std::vector<std::vector<ElemId>> out;
  for (ElemId x : domain.elements()) {
    if (x == 0 || !std::all_of(gens.begin(), gens.end(), [&](ElemId t) { return g.conj(x, t) == x; })) continue;
    std::vector<ElemId> line{x};
    for (ElemId y = g.mul(x, x); y != x; y = g.mul(y, x)) line.push_back(y);
    out.push_back(std::move(line));
  }
  return out;
}

// True if phi maps some central x into <x>; then <x> lies in the core.
bool fixes_central_line(const std::vector<std::vector<ElemId>>& lines, const std::vector<ElemId>& graph) {
  for (const auto& line : lines) {
    const ElemId y = graph[line.front()];
    if (y == kNoImage) continue;
    if (std::find(line.begin(), line.end(), y) != line.end()) return true;
  }
  return false;
}

void require_index_p(const Subgroup& domain) {
  if (domain.order() * static_cast<std::size_t>(domain.parent().p()) != domain.parent().order())
    throw std::invalid_argument("virtual endomorphism: domain must have index p");
}

}  // namespace

std::optional<std::vector<ElemId>> homomorphism_graph(const ExtensionGroup& g, std::span<const ElemId> gens,
                                                      std::span<const ElemId> images) {
  if (gens.size() != images.size()) throw std::invalid_argument("homomorphism_graph: length mismatch");
  std::vector<ElemId> graph(g.order(), kNoImage);
  std::vector<ElemId> touched;
  if (!close_graph(g, gens, images, graph, touched)) return std::nullopt;
  return graph;
}

VirtualEndo VirtualEndo::create(const Subgroup& domain, std::vector<ElemId> gens, std::vector<ElemId> images) {
  if (gens.size() != images.size()) throw std::invalid_argument("virtual endomorphism: length mismatch");
  require_index_p(domain);
  auto graph = homomorphism_graph(domain.parent(), gens, images);
  if (!graph) throw std::invalid_argument("virtual endomorphism: assignment does not extend to a homomorphism");
  for (std::size_t x = 0; x < graph->size(); ++x)
    if (((*graph)[x] != kNoImage) != domain.contains(static_cast<ElemId>(x)))
      throw std::invalid_argument("virtual endomorphism: generators do not generate the domain");
  return VirtualEndo(domain, std::move(gens), std::move(images), std::move(*graph));
}

VirtualEndo VirtualEndo::create(const GroupPtr& g, std::vector<ElemId> gens, std::vector<ElemId> images) {
  auto domain = closure(g, gens);
  return create(domain, std::move(gens), std::move(images));
}

ElemId VirtualEndo::evaluate(ElemId g) const {
  if (g >= graph_.size() || graph_[g] == kNoImage) throw std::out_of_range("evaluate: element outside the domain");
  return graph_[g];
}

Subgroup VirtualEndo::kernel() const {
  std::vector<ElemId> out;
  for (ElemId x : domain_.elements())
    if (graph_[x] == 0) out.push_back(x);
  return subgroup_from_elements(group(), std::move(out));
}

Subgroup VirtualEndo::image() const { return closure(group(), images_); }

bool VirtualEndo::is_injective() const { return kernel().is_trivial(); }

std::string VirtualEndo::to_text() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < gens_.size(); ++i)
    os << parent().format(gens_[i]) << " -> " << parent().format(images_[i]) << "\n";
  return os.str();
}

bool validate(const Subgroup& domain, std::span<const ElemId> gens, std::span<const ElemId> images) {
  if (gens.size() != images.size()) throw std::invalid_argument("validate: length mismatch");
  const auto& g = domain.parent();
  if (domain.order() * static_cast<std::size_t>(g.p()) != g.order()) return false;
  if (closure(domain.group(), gens) != domain) return false;
  return homomorphism_graph(g, gens, images).has_value();
}

ElemId evaluate(const VirtualEndo& phi, ElemId g) { return phi.evaluate(g); }

Subgroup kernel(const VirtualEndo& phi) { return phi.kernel(); }

Subgroup preimage(const VirtualEndo& phi, const Subgroup& s) {
  std::vector<ElemId> out;
  for (ElemId x : phi.domain().elements())
    if (s.contains(phi.graph()[x])) out.push_back(x);
  return subgroup_from_elements(phi.group(), std::move(out));
}

bool is_invariant(const VirtualEndo& phi, const Subgroup& s) {
  return std::all_of(s.elements().begin(), s.elements().end(), [&](ElemId x) {
    return phi.domain().contains(x) && s.contains(phi.graph()[x]);
  });
}

std::size_t core_order(const ExtensionGroup& g, const std::vector<std::uint8_t>& domain_mask,
                       const std::vector<ElemId>& graph) {
  const auto gens = g.generators();
  auto mask = domain_mask;
  std::size_t size = normal_core_in_place(g, gens, mask);
  while (true) {
    auto next = mask;
    for (std::size_t x = 0; x < next.size(); ++x)
      if (next[x] && !mask[graph[x]]) next[x] = 0;
    const std::size_t next_size = normal_core_in_place(g, gens, next);
    if (next_size == size) return size;
    mask = std::move(next);
    size = next_size;
  }
}

Subgroup core(const VirtualEndo& phi) {
  Subgroup current = normal_core(phi.domain());
  while (true) {
    Subgroup next = normal_core(intersection(current, preimage(phi, current)));
    if (next.order() == current.order()) return current;
    current = std::move(next);
  }
}

bool is_simple(const VirtualEndo& phi) { return core_order(phi.parent(), phi.domain().mask(), phi.graph()) == 1; }

// Backtracking over image tuples; each prefix is checked with the graph
// criterion so inconsistent partial assignments are cut early. With
// `prune_nonsimple`, a prefix whose partial map already has a nontrivial core
// is skipped: that core survives in every completion.
class HomEnumerator {
 public:
  using RawVisit = std::function<bool(const std::vector<ElemId>& images, const std::vector<ElemId>& graph)>;

  HomEnumerator(const Subgroup& domain, bool prune_nonsimple)
      : group_(domain.parent()), gens_(minimal_generating_set(domain)), prune_(prune_nonsimple) {
    require_index_p(domain);
    candidates_.resize(gens_.size());
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      const auto ord = group_.element_order(gens_[i]);
      for (std::size_t x = 0; x < group_.order(); ++x)
        if (ord % group_.element_order(static_cast<ElemId>(x)) == 0) candidates_[i].push_back(static_cast<ElemId>(x));
    }
    images_.resize(gens_.size());
    graph_.assign(group_.order(), kNoImage);
    partial_.assign(group_.order(), 0);
    all_gens_ = group_.generators();
    if (prune_) lines_ = central_lines(domain);
  }

  const std::vector<ElemId>& generators() const { return gens_; }

  std::uint64_t run(const RawVisit& visit) {
    visit_ = &visit;
    count_ = 0;
    stopped_ = false;
    if (gens_.empty()) {
      close_graph(group_, {}, {}, graph_, touched_);
      emit();
    } else {
      descend(0);
    }
    return count_;
  }

 private:
  void descend(std::size_t level) {
    for (ElemId x : candidates_[level]) {
      if (stopped_) return;
      images_[level] = x;
      const std::span<const ElemId> gs(gens_.data(), level + 1);
      const std::span<const ElemId> is(images_.data(), level + 1);
      if (!close_graph(group_, gs, is, graph_, touched_)) continue;
      if (level + 1 == gens_.size()) {
        emit();
      } else if (!prune_ || !partial_core_nontrivial()) {
        descend(level + 1);
      }
    }
  }

  bool partial_core_nontrivial() {
    if (fixes_central_line(lines_, graph_)) return true;
    std::fill(partial_.begin(), partial_.end(), 0);
    for (ElemId x : touched_) partial_[x] = 1;
    // Normal phi-invariant subgroups of the current subgroup, largest first.
    std::size_t size = normal_core_in_place(group_, all_gens_, partial_);
    while (size > 1) {
      auto next = partial_;
      for (std::size_t x = 0; x < next.size(); ++x)
        if (next[x] && !partial_[graph_[x]]) next[x] = 0;
      const std::size_t next_size = normal_core_in_place(group_, all_gens_, next);
      if (next_size == size) return true;
      partial_ = std::move(next);
      size = next_size;
    }
    return false;
  }

  void emit() {
    ++count_;
    if (!(*visit_)(images_, graph_)) stopped_ = true;
  }

  const ExtensionGroup& group_;
  std::vector<ElemId> gens_;
  std::vector<ElemId> all_gens_;
  bool prune_;
  std::vector<std::vector<ElemId>> candidates_;
  std::vector<ElemId> images_;
  std::vector<ElemId> graph_;
  std::vector<ElemId> touched_;
  std::vector<std::uint8_t> partial_;
  std::vector<std::vector<ElemId>> lines_;
  const RawVisit* visit_ = nullptr;
  std::uint64_t count_ = 0;
  bool stopped_ = false;
};

std::uint64_t for_each_virtual_endo(const Subgroup& domain, const std::function<bool(const VirtualEndo&)>& visit) {
  HomEnumerator e(domain, false);
  const auto& gens = e.generators();
  return e.run([&](const std::vector<ElemId>& images, const std::vector<ElemId>& graph) {
    return visit(VirtualEndo(domain, gens, images, graph));
  });
}

std::vector<VirtualEndo> enumerate_virtual_endos(const Subgroup& domain) {
  std::vector<VirtualEndo> out;
  for_each_virtual_endo(domain, [&](const VirtualEndo& phi) {
    out.push_back(phi);
    return true;
  });
  return out;
}

SimpleSearch find_simple(const Subgroup& domain, bool count_all) {
  SimpleSearch result;
  std::uint64_t simple = 0;
  const auto& g = domain.parent();
  // Count mode reports every homomorphism, so it cannot skip subtrees.
  HomEnumerator e(domain, !count_all);
  const auto& gens = e.generators();
  const auto lines = central_lines(domain);
  result.homomorphisms = e.run([&](const std::vector<ElemId>& images, const std::vector<ElemId>& graph) {
    if (fixes_central_line(lines, graph) || core_order(g, domain.mask(), graph) != 1) return true;
    ++simple;
    if (!result.first) result.first = VirtualEndo(domain, gens, images, graph);
    return count_all;
  });
  if (count_all) result.simple_count = simple;
  return result;
}

PropKReport check_prop_K(const VirtualEndo& phi, ElemId t) {
  const auto& g = phi.parent();
  if (!is_simple(phi)) throw std::invalid_argument("check_prop_K: phi is not simple");
  const auto k = phi.kernel();
  if (k.is_trivial()) throw std::invalid_argument("check_prop_K: phi is injective");
  if (g.is_abelian()) throw std::invalid_argument("check_prop_K: G is abelian");
  if (phi.domain().contains(t)) throw std::invalid_argument("check_prop_K: t lies in the domain");

  PropKReport r;
  r.kernel_core_trivial = normal_core(k).is_trivial();

  std::vector<Subgroup> conjugates;
  ElemId tp = 0;
  for (int i = 0; i < g.p(); ++i) {
    conjugates.push_back(conjugate(k, tp));
    tp = g.mul(tp, t);
  }
  r.conjugates_normal_in_domain = std::all_of(conjugates.begin(), conjugates.end(),
                                              [&](const Subgroup& c) { return is_normal_in(c, phi.domain()); });
  r.conjugates_nontrivial =
      std::all_of(conjugates.begin(), conjugates.end(), [](const Subgroup& c) { return !c.is_trivial(); });
  std::vector<std::vector<ElemId>> distinct;
  for (const auto& c : conjugates)
    if (std::find(distinct.begin(), distinct.end(), c.elements()) == distinct.end()) distinct.push_back(c.elements());
  r.distinct_conjugates = distinct.size();

  Subgroup meet = conjugates.front();
  for (std::size_t i = 1; i < conjugates.size(); ++i) meet = intersection(meet, conjugates[i]);
  r.conjugate_intersection_trivial = meet.is_trivial();
  r.normalizer_is_domain = normalizer(k) == phi.domain();

  // Label each domain element by its tuple of cosets d K^{t^i}; the smallest
  // element of each coset serves as its label.
  std::vector<std::vector<ElemId>> labels;
  for (ElemId d : phi.domain().elements()) {
    std::vector<ElemId> label;
    for (const auto& c : conjugates) {
      ElemId best = kNoImage;
      for (ElemId x : c.elements()) best = std::min(best, g.mul(d, x));
      label.push_back(best);
    }
    labels.push_back(std::move(label));
  }
  std::sort(labels.begin(), labels.end());
  r.embeds_in_quotient_product = std::adjacent_find(labels.begin(), labels.end()) == labels.end();
  return r;
}

namespace {

void require_simple_on_h(const VirtualEndo& phi, const char* what) {
  if (phi.domain() != distinguished_subgroup(phi.group()))
    throw std::invalid_argument(std::string(what) + ": domain must be the distinguished subgroup H");
  if (!is_simple(phi)) throw std::invalid_argument(std::string(what) + ": phi is not simple");
}

}  // namespace

SplittingReport check_splitting_lemma(const VirtualEndo& phi) {
  require_simple_on_h(phi, "check_splitting_lemma");
  const auto& g = phi.parent();
  const auto p = static_cast<std::size_t>(g.p());
  SplittingReport r;
  std::vector<ElemId> order_p;
  for (ElemId x : phi.domain().elements()) {
    if (p % g.element_order(x) != 0) continue;
    order_p.push_back(x);
    const ElemId y = phi.graph()[x];
    if (!r.witness && !g.in_h(y) && g.element_order(y) == p) r.witness = x;
  }
  r.generated_by_order_p_is_normal = is_normal(closure(phi.group(), order_p));
  r.group_split = is_split(g);
  return r;
}

RegularImageReport check_regular_image(const VirtualEndo& phi, std::size_t cap) {
  require_simple_on_h(phi, "check_regular_image");
  RegularImageReport r;
  r.image_regular = is_regular(phi.image(), cap);
  r.group_split = is_split(phi.parent());
  r.domain_exponent_p = exponent(phi.domain()) == static_cast<std::size_t>(phi.parent().p());
  return r;
}

VirtualEndo parse_virtual_endo(const GroupPtr& g, std::string_view text) {
  std::vector<ElemId> gens, images;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto arrow = line.find("->");
    if (arrow == std::string::npos)
      throw ParseError("virtual endomorphism line " + std::to_string(lineno) + ": expected 'g -> image'");
    gens.push_back(g->parse_element(line.substr(0, arrow)));
    images.push_back(g->parse_element(line.substr(arrow + 2)));
  }
  return VirtualEndo::create(g, std::move(gens), std::move(images));
}

}  // namespace selfsim
