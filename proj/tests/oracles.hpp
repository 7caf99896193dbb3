#pragma once

// Brute-force reference computations. They touch the group only through
// mul/inv and the graph of phi, never through the library's subgroup layer.

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

#include "selfsim/groups.hpp"
#include "selfsim/virtendo.hpp"

namespace oracle {

using selfsim::ElemId;
using selfsim::ExtensionGroup;

using Mat = std::vector<std::vector<long long>>;

inline Mat mat_mul(const Mat& a, const Mat& b, long long m) {
  const std::size_t n = a.size();
  Mat c(n, std::vector<long long>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) c[i][j] = (c[i][j] + a[i][k] * b[k][j]) % m;
  return c;
}

inline bool is_identity(const Mat& a) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (a[i][j] != (i == j ? 1 : 0)) return false;
  return true;
}

/// Smallest k <= limit with a^k = 1, else 0.
inline std::uint64_t mat_order(const Mat& a, long long m, std::uint64_t limit = 10000) {
  Mat x = a;
  for (std::uint64_t k = 1; k <= limit; ++k) {
    if (is_identity(x)) return k;
    x = mat_mul(x, a, m);
  }
  return 0;
}

/// Closure of `seed` under multiplication, as a sorted element list.
inline std::vector<ElemId> closure(const ExtensionGroup& g, std::vector<ElemId> seed) {
  std::set<ElemId> s{0};
  std::vector<ElemId> frontier{0};
  while (!frontier.empty()) {
    std::vector<ElemId> next;
    for (ElemId x : frontier)
      for (ElemId y : seed) {
        const ElemId z = g.mul(x, y);
        if (s.insert(z).second) next.push_back(z);
      }
    frontier = std::move(next);
  }
  return {s.begin(), s.end()};
}

/// Every subgroup contained in the subgroup with sorted elements `within`,
/// as sorted element lists, built by adjoining one element at a time.
inline std::set<std::vector<ElemId>> all_subgroups(const ExtensionGroup& g, const std::vector<ElemId>& within) {
  std::set<std::vector<ElemId>> out;
  std::set<std::vector<ElemId>> layer{{0}};
  out.insert({0});
  while (!layer.empty()) {
    std::set<std::vector<ElemId>> next;
    for (const auto& s : layer)
      for (ElemId x : within) {
        if (std::binary_search(s.begin(), s.end(), x)) continue;
        auto seed = s;
        seed.push_back(x);
        auto t = closure(g, seed);
        if (out.insert(t).second) next.insert(std::move(t));
      }
    layer = std::move(next);
  }
  return out;
}

inline bool contains(const std::vector<ElemId>& sorted, ElemId x) {
  return std::binary_search(sorted.begin(), sorted.end(), x);
}

inline bool is_normal(const ExtensionGroup& g, const std::vector<ElemId>& s) {
  for (ElemId x : s)
    for (ElemId y = 0; y < g.order(); ++y)
      if (!contains(s, g.mul(g.mul(g.inv(y), x), y))) return false;
  return true;
}

inline std::set<std::vector<ElemId>> all_subgroups(const ExtensionGroup& g) {
  std::vector<ElemId> all(g.order());
  for (ElemId x = 0; x < g.order(); ++x) all[x] = x;
  return all_subgroups(g, all);
}

/// Largest normal phi-invariant subgroup among `candidates` (subgroups of the domain).
inline std::vector<ElemId> core_by_subgroup_scan(const selfsim::VirtualEndo& phi,
                                                 const std::set<std::vector<ElemId>>& candidates) {
  const auto& g = phi.parent();
  const auto& graph = phi.graph();
  std::vector<ElemId> best{0};
  for (const auto& s : candidates) {
    if (s.size() <= best.size()) continue;
    bool ok = true;
    for (ElemId x : s)
      if (graph[x] == selfsim::kNoImage || !contains(s, graph[x])) {
        ok = false;
        break;
      }
    if (ok && is_normal(g, s)) best = s;
  }
  return best;
}

inline std::vector<ElemId> core_by_subgroup_scan(const selfsim::VirtualEndo& phi) {
  return core_by_subgroup_scan(phi, all_subgroups(phi.parent(), phi.domain().elements()));
}

/// Smallest normal phi-invariant subgroup containing x, or empty if it
/// leaves the domain.
inline std::vector<ElemId> invariant_normal_closure(const selfsim::VirtualEndo& phi, ElemId x) {
  const auto& g = phi.parent();
  const auto& graph = phi.graph();
  std::vector<ElemId> seed{x};
  while (true) {
    auto s = closure(g, seed);
    std::vector<ElemId> extra;
    for (ElemId y : s) {
      if (graph[y] == selfsim::kNoImage) return {};
      if (!contains(s, graph[y])) extra.push_back(graph[y]);
      for (ElemId t = 0; t < g.order(); ++t) {
        const ElemId c = g.mul(g.mul(g.inv(t), y), t);
        if (!contains(s, c)) extra.push_back(c);
      }
    }
    if (extra.empty()) return s;
    seed = s;
    seed.insert(seed.end(), extra.begin(), extra.end());
  }
}

/// Join of the invariant normal closures of domain elements that stay in the domain.
inline std::vector<ElemId> core_from_below(const selfsim::VirtualEndo& phi) {
  std::vector<ElemId> seed;
  for (ElemId x : phi.domain().elements()) {
    auto s = invariant_normal_closure(phi, x);
    seed.insert(seed.end(), s.begin(), s.end());
  }
  return closure(phi.parent(), seed);
}

/// Number of homomorphisms from the subgroup generated by `gens` into G,
/// by trying every image tuple and checking the multiplication table.
inline std::uint64_t count_homomorphisms(const ExtensionGroup& g, const std::vector<ElemId>& gens) {
  const auto dom = closure(g, gens);
  std::uint64_t count = 0;
  std::vector<ElemId> images(gens.size(), 0);
  while (true) {
    // Extend the tuple along words; reject on a conflict.
    std::vector<ElemId> f(g.order(), selfsim::kNoImage);
    f[0] = 0;
    std::vector<ElemId> frontier{0};
    bool ok = true;
    while (!frontier.empty() && ok) {
      std::vector<ElemId> next;
      for (ElemId x : frontier)
        for (std::size_t i = 0; i < gens.size() && ok; ++i) {
          const ElemId y = g.mul(x, gens[i]);
          const ElemId fy = g.mul(f[x], images[i]);
          if (f[y] == selfsim::kNoImage) {
            f[y] = fy;
            next.push_back(y);
          } else if (f[y] != fy) {
            ok = false;
          }
        }
      frontier = std::move(next);
    }
    if (ok)
      for (ElemId x : dom)
        for (ElemId y : dom)
          if (f[g.mul(x, y)] != g.mul(f[x], f[y])) ok = false;
    count += ok;
    std::size_t pos = 0;
    while (pos < images.size() && ++images[pos] == g.order()) images[pos++] = 0;
    if (pos == images.size()) break;
  }
  return count;
}

}  // namespace oracle
