#include "selfsim/action.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <sstream>
#include <stdexcept>

#include "selfsim/errors.hpp"

namespace selfsim {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::size_t ipow(std::size_t base, std::size_t e) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= base;
  return r;
}

Perm identity_perm(std::size_t n) {
  Perm p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<std::uint32_t>(i);
  return p;
}

Perm inverse_perm(const Perm& p) {
  Perm q(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) q[p[i]] = static_cast<std::uint32_t>(i);
  return q;
}

bool is_identity_perm(const Perm& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != i) return false;
  return true;
}

std::string format_cycles(const Perm& p) {
  const bool spaced = p.size() > 10;
  std::string out;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t start = 0; start < p.size(); ++start) {
    if (seen[start] || p[start] == start) continue;
    out += '(';
    std::size_t x = start;
    bool first = true;
    do {
      if (spaced && !first) out += ' ';
      out += std::to_string(x);
      seen[x] = true;
      x = p[x];
      first = false;
    } while (x != start);
    out += ')';
  }
  return out;
}

std::string generator_name(std::size_t j) { return j == 0 ? "a" : ExtensionGroup::h_generator_name(j - 1); }

// Canonical word of x with letters renumbered to `rec`'s generator indices.
Word word_in(const ExtensionGroup& g, const WreathRecursion& rec, ElemId x) {
  Word w = canonical_word(g, x);
  for (auto& l : w) l.gen = rec.generator_index(generator_name(l.gen));
  return w;
}

ElemId evaluate_word(const GroupPtr& g, const WreathRecursion& rec, const Word& w) {
  ElemId r = 0;
  for (const auto& l : w) r = g->mul(r, g->pow(g->parse_element(rec.names[l.gen]), l.exp));
  return r;
}

// Permutations of X^d for every element of G, one level at a time.
class ElementLevels {
 public:
  explicit ElementLevels(const ActionContext& ctx) : ctx_(ctx), k_(ctx.degree()), n_(ctx.group->order()) {
    root_.resize(n_ * k_);
    sec_.resize(n_ * k_);
    for (std::size_t g = 0; g < n_; ++g)
      for (std::uint32_t x = 0; x < k_; ++x) {
        root_[g * k_ + x] = ctx.root_image(static_cast<ElemId>(g), x);
        sec_[g * k_ + x] = ctx.section(static_cast<ElemId>(g), x);
      }
    table_.assign(n_, 0);  // depth 0: one vertex
    width_ = 1;
  }

  std::size_t depth() const { return depth_; }

  void step() {
    const std::size_t next_width = width_ * k_;
    std::vector<std::uint32_t> next(n_ * next_width);
    for (std::size_t g = 0; g < n_; ++g)
      for (std::size_t x = 0; x < k_; ++x) {
        const std::size_t s = sec_[g * k_ + x];
        const std::size_t y = root_[g * k_ + x];
        for (std::size_t w = 0; w < width_; ++w)
          next[g * next_width + x * width_ + w] = static_cast<std::uint32_t>(y * width_ + table_[s * width_ + w]);
      }
    table_ = std::move(next);
    width_ = next_width;
    ++depth_;
  }

  Subgroup kernel() const {
    std::vector<ElemId> out;
    for (std::size_t g = 0; g < n_; ++g) {
      bool fixes = true;
      for (std::size_t v = 0; v < width_ && fixes; ++v) fixes = table_[g * width_ + v] == v;
      if (fixes) out.push_back(static_cast<ElemId>(g));
    }
    return subgroup_from_elements(ctx_.group, std::move(out));
  }

  std::uint32_t image(ElemId g, std::size_t v) const { return table_[g * width_ + v]; }

 private:
  const ActionContext& ctx_;
  std::size_t k_;
  std::size_t n_;
  std::vector<std::uint32_t> root_;
  std::vector<ElemId> sec_;
  std::vector<std::uint32_t> table_;
  std::size_t width_;
  std::size_t depth_ = 0;
};

}  // namespace

// ---------------------------------------------------------------------------
// Recursions and their text form

std::size_t WreathRecursion::generator_index(std::string_view name) const {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return i;
  throw std::out_of_range("recursion: unknown generator '" + std::string(name) + "'");
}

void validate_recursion(const WreathRecursion& rec) {
  if (rec.root_perms.size() != rec.size() || rec.sections.size() != rec.size())
    throw std::invalid_argument("recursion: inconsistent generator count");
  for (std::size_t g = 0; g < rec.size(); ++g) {
    const auto& p = rec.root_perms[g];
    if (p.size() != rec.degree) throw std::invalid_argument("recursion: root permutation has wrong degree");
    std::vector<bool> hit(rec.degree, false);
    for (auto y : p) {
      if (y >= rec.degree || hit[y]) throw std::invalid_argument("recursion: root permutation is not a bijection");
      hit[y] = true;
    }
    if (rec.sections[g].size() != rec.degree) throw std::invalid_argument("recursion: wrong number of sections");
    for (const auto& w : rec.sections[g])
      for (const auto& l : w)
        if (l.gen >= rec.size()) throw std::invalid_argument("recursion: section uses an undeclared generator");
  }
}

std::string format_word(const WreathRecursion& rec, const Word& w) {
  if (w.empty()) return "1";
  const bool short_names =
      std::all_of(rec.names.begin(), rec.names.end(), [](const std::string& n) { return n.size() == 1; });
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i && !short_names) out += '*';
    out += rec.names[w[i].gen];
    if (w[i].exp != 1) out += "^" + std::to_string(w[i].exp);
  }
  return out;
}

Word parse_word(const WreathRecursion& rec, std::string_view text) {
  Word w;
  std::size_t k = 0;
  text = trim(text);
  if (text == "1") return w;
  while (k < text.size()) {
    if (text[k] == '*' || std::isspace(static_cast<unsigned char>(text[k]))) {
      ++k;
      continue;
    }
    if (text[k] == '1' && (k + 1 == text.size() || text[k + 1] == '*' || text[k + 1] == ' ')) {
      ++k;
      continue;
    }
    std::size_t best = rec.size(), best_len = 0;
    for (std::size_t g = 0; g < rec.size(); ++g) {
      const auto& n = rec.names[g];
      if (n.size() > best_len && text.substr(k, n.size()) == n) {
        best = g;
        best_len = n.size();
      }
    }
    if (best == rec.size()) throw ParseError("recursion: unknown generator in word '" + std::string(text) + "'");
    k += best_len;
    std::int64_t e = 1;
    if (k < text.size() && text[k] == '^') {
      ++k;
      std::size_t end = k;
      if (end < text.size() && text[end] == '-') ++end;
      while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end]))) ++end;
      auto [ptr, ec] = std::from_chars(text.data() + k, text.data() + end, e);
      if (ec != std::errc() || ptr != text.data() + end)
        throw ParseError("recursion: bad exponent in word '" + std::string(text) + "'");
      k = end;
    }
    w.push_back({best, e});
  }
  return w;
}

std::string format_recursion(const WreathRecursion& rec) {
  std::ostringstream os;
  for (std::size_t g = 0; g < rec.size(); ++g) {
    os << rec.names[g] << " = " << format_cycles(rec.root_perms[g]) << '(';
    for (std::size_t x = 0; x < rec.degree; ++x) os << (x ? "," : "") << format_word(rec, rec.sections[g][x]);
    os << ")\n";
  }
  return os.str();
}

WreathRecursion parse_recursion(std::string_view text) {
  struct Raw {
    std::string name;
    std::vector<std::string> groups;
  };
  std::vector<Raw> raws;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    std::string_view view = trim(line);
    if (view.empty() || view.front() == '#') continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) throw ParseError("recursion: expected 'name = ...'");
    Raw raw{std::string(trim(view.substr(0, eq))), {}};
    std::string_view rhs = trim(view.substr(eq + 1));
    while (!rhs.empty()) {
      if (rhs.front() != '(') throw ParseError("recursion: expected '(' in '" + std::string(view) + "'");
      const auto close = rhs.find(')');
      if (close == std::string_view::npos) throw ParseError("recursion: unbalanced parentheses");
      raw.groups.emplace_back(rhs.substr(1, close - 1));
      rhs = trim(rhs.substr(close + 1));
    }
    if (raw.groups.empty()) throw ParseError("recursion: missing sections for '" + raw.name + "'");
    raws.push_back(std::move(raw));
  }

  WreathRecursion rec;
  for (const auto& r : raws) rec.names.push_back(r.name);
  for (const auto& r : raws) {
    std::vector<std::string> cells;
    std::string_view secs = r.groups.back();
    while (true) {
      const auto comma = secs.find(',');
      cells.emplace_back(trim(secs.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      secs.remove_prefix(comma + 1);
    }
    if (rec.degree == 0) rec.degree = cells.size();
    if (cells.size() != rec.degree) throw ParseError("recursion: inconsistent number of sections");

    Perm perm = identity_perm(rec.degree);
    std::vector<bool> used(rec.degree, false);
    for (std::size_t c = 0; c + 1 < r.groups.size(); ++c) {
      std::vector<std::uint32_t> cyc;
      const std::string& body = r.groups[c];
      if (body.find(' ') != std::string::npos) {
        std::istringstream cs(body);
        std::uint32_t v;
        while (cs >> v) cyc.push_back(v);
      } else {
        for (char ch : body) {
          if (!std::isdigit(static_cast<unsigned char>(ch))) throw ParseError("recursion: bad cycle '" + body + "'");
          cyc.push_back(static_cast<std::uint32_t>(ch - '0'));
        }
      }
      for (std::size_t i = 0; i < cyc.size(); ++i) {
        if (cyc[i] >= rec.degree || used[cyc[i]]) throw ParseError("recursion: cycles must be disjoint and in range");
        used[cyc[i]] = true;
        perm[cyc[i]] = cyc[(i + 1) % cyc.size()];
      }
    }
    rec.root_perms.push_back(std::move(perm));
    std::vector<Word> words;
    for (const auto& cell : cells) words.push_back(parse_word(rec, cell));
    rec.sections.push_back(std::move(words));
  }
  validate_recursion(rec);
  return rec;
}

// ---------------------------------------------------------------------------
// Induced action

ElemId ActionContext::section(ElemId g, std::uint32_t x) const {
  const auto& grp = *group;
  const ElemId gt = grp.mul(g, transversal[x]);
  const ElemId ty = transversal[coset[gt]];
  return phi.evaluate(grp.mul(grp.inv(ty), gt));
}

ActionContext make_context(const VirtualEndo& phi) {
  const auto& g = phi.parent();
  const auto& d = phi.domain();
  // a when it lies outside the domain, else the first element that does.
  ElemId step = g.a();
  if (d.contains(step)) {
    step = 0;
    while (d.contains(step)) ++step;
  }
  std::vector<ElemId> t;
  for (int i = 0; i < g.p(); ++i) t.push_back(g.pow(step, i));
  return make_context(phi, std::move(t));
}

ActionContext make_context(const VirtualEndo& phi, std::vector<ElemId> transversal) {
  const auto& g = phi.parent();
  const auto& d = phi.domain();
  if (transversal.empty() || transversal.front() != 0) throw std::invalid_argument("transversal must start with 1");
  if (transversal.size() != d.index()) throw std::invalid_argument("transversal has the wrong size");
  std::vector<std::uint32_t> coset(g.order(), std::numeric_limits<std::uint32_t>::max());
  for (std::size_t y = 0; y < transversal.size(); ++y)
    for (ElemId h : d.elements()) {
      auto& slot = coset[g.mul(transversal[y], h)];
      if (slot != std::numeric_limits<std::uint32_t>::max())
        throw std::invalid_argument("transversal: two representatives of one coset");
      slot = static_cast<std::uint32_t>(y);
    }
  return {phi.group(), phi, std::move(transversal), std::move(coset)};
}

Word canonical_word(const ExtensionGroup& g, ElemId x) {
  const auto e = g.element(x);
  Word w;
  if (e.i != 0) w.push_back({0, e.i});
  for (std::size_t j = 0; j < e.h.size(); ++j)
    if (e.h[j] != 0) w.push_back({j + 1, e.h[j]});
  return w;
}

WreathRecursion induced_recursion(const ActionContext& ctx) {
  const auto& g = *ctx.group;
  WreathRecursion rec;
  rec.degree = ctx.degree();
  const auto gens = g.generators();
  for (std::size_t j = 0; j < gens.size(); ++j) rec.names.push_back(generator_name(j));
  for (ElemId x : gens) {
    Perm perm(rec.degree);
    std::vector<Word> secs;
    for (std::uint32_t v = 0; v < rec.degree; ++v) {
      perm[v] = ctx.root_image(x, v);
      secs.push_back(canonical_word(g, ctx.section(x, v)));
    }
    rec.root_perms.push_back(std::move(perm));
    rec.sections.push_back(std::move(secs));
  }
  return rec;
}

std::vector<Perm> level_permutations(const WreathRecursion& rec, std::size_t depth) {
  const std::size_t k = rec.degree;
  std::vector<Perm> cur(rec.size(), Perm{0});
  std::size_t width = 1;
  for (std::size_t level = 1; level <= depth; ++level) {
    std::vector<Perm> next(rec.size(), Perm(width * k));
    for (std::size_t g = 0; g < rec.size(); ++g)
      for (std::size_t x = 0; x < k; ++x) {
        const Perm sp = word_permutation(cur, rec.sections[g][x]);
        const std::size_t y = rec.root_perms[g][x];
        for (std::size_t w = 0; w < width; ++w)
          next[g][x * width + w] = static_cast<std::uint32_t>(y * width + sp[w]);
      }
    cur = std::move(next);
    width *= k;
  }
  return cur;
}

Perm word_permutation(const std::vector<Perm>& level, const Word& w) {
  const std::size_t n = level.empty() ? 1 : level.front().size();
  Perm result = identity_perm(n);
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    const Perm& base = it->exp >= 0 ? level[it->gen] : inverse_perm(level[it->gen]);
    const std::int64_t reps = it->exp >= 0 ? it->exp : -it->exp;
    for (std::int64_t r = 0; r < reps; ++r)
      for (auto& v : result) v = base[v];
  }
  return result;
}

Vertex act(const WreathRecursion& rec, const Word& g, const Vertex& v) {
  for (auto x : v)
    if (x >= rec.degree) throw std::invalid_argument("act: letter out of range");
  for (const auto& l : g)
    if (l.gen >= rec.size()) throw std::invalid_argument("act: undeclared generator");
  const auto level = level_permutations(rec, v.size());
  std::size_t idx = 0;
  for (auto x : v) idx = idx * rec.degree + x;
  std::size_t img = word_permutation(level, g)[idx];
  Vertex out(v.size());
  for (std::size_t i = v.size(); i-- > 0;) {
    out[i] = static_cast<std::uint32_t>(img % rec.degree);
    img /= rec.degree;
  }
  return out;
}

Vertex act(const ActionContext& ctx, ElemId g, const Vertex& v) {
  Vertex out;
  out.reserve(v.size());
  for (auto x : v) {
    if (x >= ctx.degree()) throw std::invalid_argument("act: letter out of range");
    out.push_back(ctx.root_image(g, x));
    g = ctx.section(g, x);
  }
  return out;
}

std::size_t default_depth_cap(std::size_t degree) {
  if (degree == 2) return 12;
  if (degree == 3) return 8;
  std::size_t d = 0;
  for (std::size_t w = degree; w <= 6561; w *= degree) ++d;
  return std::max<std::size_t>(d, 1);
}

Subgroup depth_kernel(const ActionContext& ctx, std::size_t depth) {
  ElementLevels levels(ctx);
  for (std::size_t d = 0; d < depth; ++d) levels.step();
  return levels.kernel();
}

Subgroup depth_kernel(const GroupPtr& g, const WreathRecursion& rec, std::size_t depth) {
  const auto level = level_permutations(rec, depth);
  std::vector<ElemId> out;
  for (std::size_t x = 0; x < g->order(); ++x)
    if (is_identity_perm(word_permutation(level, word_in(*g, rec, static_cast<ElemId>(x)))))
      out.push_back(static_cast<ElemId>(x));
  return subgroup_from_elements(g, std::move(out));
}

StableKernel stabilize_kernel(const ActionContext& ctx, std::size_t depth_cap) {
  if (depth_cap == 0) depth_cap = default_depth_cap(ctx.degree());
  ElementLevels levels(ctx);
  levels.step();
  Subgroup prev = levels.kernel();
  while (true) {
    if (levels.depth() + 1 > depth_cap) throw CapExceeded("stable_kernel: depth cap reached before stabilizing");
    levels.step();
    Subgroup next = levels.kernel();
    if (next == prev) break;
    prev = std::move(next);
  }
  const std::size_t stable = levels.depth() - 1;
  for (int extra = 0; extra < 2; ++extra) {
    if (levels.depth() + 1 > depth_cap) throw CapExceeded("stable_kernel: depth cap reached while confirming");
    levels.step();
    if (levels.kernel() != prev) throw std::logic_error("stable_kernel: kernel changed after stabilizing");
  }
  return {prev, stable};
}

Subgroup stable_kernel(const ActionContext& ctx, std::size_t depth_cap) {
  return stabilize_kernel(ctx, depth_cap).kernel;
}

Subgroup vertex_stabilizer(const ActionContext& ctx, std::uint32_t x) {
  std::vector<ElemId> out;
  for (std::size_t g = 0; g < ctx.group->order(); ++g)
    if (ctx.root_image(static_cast<ElemId>(g), x) == x) out.push_back(static_cast<ElemId>(g));
  return subgroup_from_elements(ctx.group, std::move(out));
}

WreathRecursion kpn_recursion(int p, int n) {
  if (p < 2 || n < 1) throw std::invalid_argument("kpn_recursion: need p >= 2 and n >= 1");
  WreathRecursion rec;
  rec.degree = static_cast<std::size_t>(p);
  for (int j = 1; j <= n; ++j) {
    rec.names.push_back("a" + std::to_string(j));
    std::vector<Word> secs(rec.degree);
    Perm perm = identity_perm(rec.degree);
    if (j == 1) {
      for (std::size_t x = 0; x < rec.degree; ++x) perm[x] = static_cast<std::uint32_t>((x + 1) % rec.degree);
    } else {
      secs[0] = {{static_cast<std::size_t>(j - 2), 1}};
    }
    rec.root_perms.push_back(std::move(perm));
    rec.sections.push_back(std::move(secs));
  }
  return rec;
}

std::uint64_t group_order_by_closure(const WreathRecursion& rec, std::size_t depth, std::size_t cap) {
  const auto gens = level_permutations(rec, depth);
  std::set<Perm> seen{identity_perm(ipow(rec.degree, depth))};
  std::vector<Perm> queue(seen.begin(), seen.end());
  for (std::size_t k = 0; k < queue.size(); ++k) {
    for (const auto& gperm : gens) {
      Perm next(queue[k].size());
      for (std::size_t v = 0; v < next.size(); ++v) next[v] = gperm[queue[k][v]];
      if (seen.insert(next).second) {
        if (seen.size() > cap) throw CapExceeded("group_order_by_closure: too many elements");
        queue.push_back(std::move(next));
      }
    }
  }
  return seen.size();
}

ElemId section_element(const GroupPtr& g, const WreathRecursion& rec, const Word& w, std::uint32_t x) {
  // Expand into unit steps, then walk from the rightmost letter outward.
  std::vector<std::pair<std::size_t, int>> steps;
  for (const auto& l : w)
    for (std::int64_t r = 0; r < (l.exp >= 0 ? l.exp : -l.exp); ++r) steps.emplace_back(l.gen, l.exp >= 0 ? 1 : -1);
  ElemId result = 0;
  std::uint32_t cur = x;
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
    const auto& perm = rec.root_perms[it->first];
    ElemId sec;
    if (it->second > 0) {
      sec = evaluate_word(g, rec, rec.sections[it->first][cur]);
      cur = perm[cur];
    } else {
      const auto pre = static_cast<std::uint32_t>(std::find(perm.begin(), perm.end(), cur) - perm.begin());
      sec = g->inv(evaluate_word(g, rec, rec.sections[it->first][pre]));
      cur = pre;
    }
    result = g->mul(sec, result);
  }
  return result;
}

VirtualEndo virtual_endo_from_recursion(const GroupPtr& g, const WreathRecursion& rec) {
  const auto level = level_permutations(rec, 1);
  std::vector<ElemId> stab;
  for (std::size_t x = 0; x < g->order(); ++x)
    if (word_permutation(level, word_in(*g, rec, static_cast<ElemId>(x)))[0] == 0) stab.push_back(static_cast<ElemId>(x));
  const auto domain = subgroup_from_elements(g, std::move(stab));
  auto gens = minimal_generating_set(domain);
  std::vector<ElemId> images;
  for (ElemId h : gens) images.push_back(section_element(g, rec, word_in(*g, rec, h), 0));
  return VirtualEndo::create(domain, std::move(gens), std::move(images));
}

}  // namespace selfsim
