#include "selfsim/harness.hpp"

#include <atomic>
#include <cstdio>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "selfsim/errors.hpp"

namespace selfsim {

const char* const kTernaryExampleTable =
    "a = (012)(1,1,1)\n"
    "b = (d,d,d)\n"
    "c = (1,d,d^2)\n"
    "d = (e,e,e)\n"
    "e = (a,a,a)\n";

namespace {

void partitions(std::size_t remaining, std::size_t max_part, std::vector<int>& cur,
                std::vector<std::vector<int>>& out) {
  if (remaining == 0) {
    out.push_back(cur);
    return;
  }
  for (std::size_t part = std::min(remaining, max_part); part >= 1; --part) {
    cur.push_back(static_cast<int>(part));
    partitions(remaining - part, part, cur, out);
    cur.pop_back();
  }
}

std::string join(const std::vector<Residue>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out;
}

[[noreturn]] void fail(const ExtensionSpec& spec, const std::string& what) {
  throw VerificationFailure(what + "\n" + format_group_spec(spec));
}

// stable_kernel == core, and trivial kernel <=> simple.
bool kernel_matches_core(const VirtualEndo& phi) {
  const auto ctx = make_context(phi);
  const auto kernel = stable_kernel(ctx);
  const auto c = core(phi);
  return kernel == c && (kernel.is_trivial() == is_simple(phi));
}

void check_simple_phi(const VirtualEndo& phi, const SweepConfig& cfg, CaseChecks& checks) {
  const auto& g = phi.parent();
  if (!check_splitting_lemma(phi).holds()) checks.splitting_lemma = false;
  if (!check_regular_image(phi, cfg.regularity_cap).holds()) checks.regular_image = false;
  if (!phi.is_injective() && !g.is_abelian()) {
    ++checks.prop_k_runs;
    if (!check_prop_K(phi, g.a()).holds(g.p())) checks.prop_k = false;
  }
  ++checks.kernel_checks;
  if (!kernel_matches_core(phi)) checks.kernel_equals_core = false;
}

}  // namespace

std::vector<AbelianPGroup> abelian_p_groups(int p, std::size_t max_order) {
  std::vector<AbelianPGroup> out;
  std::size_t order = static_cast<std::size_t>(p);
  for (std::size_t k = 1; order <= max_order; ++k, order *= static_cast<std::size_t>(p)) {
    std::vector<std::vector<int>> parts;
    std::vector<int> cur;
    partitions(k, k, cur, parts);
    for (auto& e : parts) out.emplace_back(p, e);
  }
  return out;
}

std::vector<FpMatrix> automorphisms_of_order_dividing_p(const AbelianPGroup& h) {
  const std::size_t n = h.rank();
  const int p = h.p();
  // Entry (i, j) must be a multiple of p^{e_i - e_j} when e_i > e_j.
  std::vector<Residue> step(n * n), modulus(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Residue s = 1;
      for (int k = h.exponents()[j]; k < h.exponents()[i]; ++k) s *= p;
      step[i * n + j] = s;
      modulus[i * n + j] = h.modulus(i);
    }
  std::vector<FpMatrix> out;
  std::vector<Residue> digits(n * n, 0);
  FpMatrix m(p, h.moduli());
  while (true) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m.set(i, j, digits[i * n + j]);
    if (m.pow(static_cast<std::uint64_t>(p)).is_identity()) out.push_back(m);
    std::size_t pos = 0;
    while (pos < digits.size()) {
      digits[pos] += step[pos];
      if (digits[pos] < modulus[pos]) break;
      digits[pos] = 0;
      ++pos;
    }
    if (pos == digits.size()) break;
  }
  return out;
}

std::vector<Vector> fixed_points(const AbelianPGroup& h, const FpMatrix& alpha) {
  std::vector<Vector> out;
  for (std::size_t idx = 0; idx < h.order(); ++idx) {
    auto v = h.element(idx);
    if (alpha.apply(v) == v) out.push_back(std::move(v));
  }
  return out;
}

std::vector<ExtensionSpec> sweep_specs(const SweepConfig& cfg) {
  std::vector<ExtensionSpec> out;
  for (int p : cfg.primes) {
    const auto it = cfg.max_h_order.find(p);
    if (it == cfg.max_h_order.end()) continue;
    for (const auto& h : abelian_p_groups(p, it->second))
      for (const auto& alpha : automorphisms_of_order_dividing_p(h))
        for (auto& h0 : fixed_points(h, alpha)) {
          const bool zero = std::all_of(h0.begin(), h0.end(), [](Residue x) { return x == 0; });
          if (!cfg.include_nonsplit && !zero) continue;
          out.push_back({p, h, alpha, std::move(h0)});
        }
  }
  return out;
}

CaseVerdict verify_case(const ExtensionSpec& spec, const SweepConfig& cfg) {
  auto g = build_group(spec);
  const auto h = distinguished_subgroup(g);
  CaseVerdict v(spec);
  v.group_order = g->order();
  v.split = is_split(*g);
  v.elementary = spec.H.is_elementary();

  auto search = find_simple(h, cfg.count_simple);
  v.homomorphisms_visited = search.homomorphisms;
  v.simple_count = search.simple_count;
  v.simple_exists = search.first.has_value();
  if (!v.theorem_predicate())
    fail(spec, "simple phi exists = " + std::to_string(v.simple_exists) + " but split = " + std::to_string(v.split) +
                   ", elementary = " + std::to_string(v.elementary));

  if (cfg.samples_per_case > 0) {
    for_each_virtual_endo(h, [&](const VirtualEndo& phi) {
      v.samples.push_back(phi);
      return v.samples.size() < cfg.samples_per_case;
    });
  }

  if (v.simple_exists) {
    v.witness = search.first;
    v.witness_recursion = format_recursion(induced_recursion(make_context(*v.witness)));
    if (cfg.deep_checks) {
      check_simple_phi(*v.witness, cfg, v.checks);
      if (v.split && v.elementary) {
        const auto jc = construct_phi(g);
        v.checks.construction_ran = true;
        v.constructed = jc.phi;
        const auto report = verify_construction(jc);
        if (!report.holds()) v.checks.construction = false;
        std::size_t expected = 1;
        for (std::size_t k = jc.jordan.block_count(); k < spec.H.rank(); ++k) expected *= static_cast<std::size_t>(g->p());
        if (jc.phi.kernel().order() != expected) v.checks.kernel_order = false;
        check_simple_phi(jc.phi, cfg, v.checks);
      }
    }
  }
  if (cfg.deep_checks) {
    for (const auto& phi : v.samples) {
      ++v.checks.kernel_checks;
      if (!kernel_matches_core(phi)) v.checks.kernel_equals_core = false;
    }
  }
  if (!v.checks.all()) fail(spec, "cross-check failed");
  return v;
}

std::vector<CaseVerdict> verify_theorem(const SweepConfig& cfg, const std::function<void(const CaseVerdict&)>& on_case) {
  const auto specs = sweep_specs(cfg);
  std::vector<std::optional<CaseVerdict>> results(specs.size());
  std::vector<std::exception_ptr> errors(specs.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> abort{false};

  auto worker = [&] {
    while (!abort.load()) {
      const std::size_t i = next.fetch_add(1);
      if (i >= specs.size()) return;
      try {
        results[i] = verify_case(specs[i], cfg);
      } catch (...) {
        errors[i] = std::current_exception();
        abort.store(true);
      }
    }
  };
  const std::size_t threads = std::max<std::size_t>(cfg.threads, 1);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::vector<CaseVerdict> out;
  out.reserve(specs.size());
  for (std::size_t i = 0; i < specs.size(); ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    if (!results[i]) break;
    if (on_case) on_case(*results[i]);
    out.push_back(std::move(*results[i]));
  }
  return out;
}

std::string alpha_hash(const FpMatrix& alpha) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&](std::int64_t v) {
    for (int b = 0; b < 8; ++b) {
      h ^= static_cast<std::uint64_t>(v >> (8 * b)) & 0xff;
      h *= 0x100000001b3ULL;
    }
  };
  mix(alpha.p());
  for (auto m : alpha.moduli()) mix(m);
  for (std::size_t r = 0; r < alpha.size(); ++r)
    for (std::size_t c = 0; c < alpha.size(); ++c) mix(alpha.at(r, c));
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string format_case_record(const CaseVerdict& v) {
  std::vector<Residue> exps(v.spec.H.exponents().begin(), v.spec.H.exponents().end());
  std::ostringstream os;
  os << "case: p=" << v.spec.p << " H=" << join(exps) << " alpha=" << alpha_hash(v.spec.alpha)
     << " h0=" << join(v.spec.h0) << " split=" << v.split << " elementary=" << v.elementary
     << " simple_exists=" << v.simple_exists << " simple_count=";
  if (v.simple_count)
    os << *v.simple_count;
  else
    os << '-';
  return os.str();
}

std::uint64_t DomainSweep::total_simple() const {
  std::uint64_t t = 0;
  for (const auto& d : domains) t += d.simple;
  return t;
}

DomainSweep sweep_domains(const GroupPtr& g) {
  DomainSweep out{g, {}};
  for (auto& d : index_p_subgroups(g)) {
    DomainCount count{d, {}, 0, 0};
    for (ElemId x : minimal_generating_set(d)) count.generators += (count.generators.empty() ? "" : ", ") + g->format(x);
    const auto search = find_simple(d, true);
    count.homomorphisms = search.homomorphisms;
    count.simple = *search.simple_count;
    out.domains.push_back(std::move(count));
  }
  return out;
}

std::vector<DihedralReport> verify_dihedral(const std::vector<int>& n_values) {
  std::vector<DihedralReport> out;
  for (int n : n_values) {
    DihedralReport r{n, sweep_domains(dihedral(n))};
    if (r.sweep.total_simple() != 0)
      throw VerificationFailure("dihedral group of order " + std::to_string(r.sweep.group->order()) +
                                " admits a simple virtual endomorphism");
    out.push_back(std::move(r));
  }
  return out;
}

ExampleReport verify_ternary_example() {
  auto g = build_group(ternary_example_spec());
  const auto jc = construct_phi(g);
  const auto ctx = make_context(jc.phi);
  ExampleReport r;
  r.phi_text = jc.phi.to_text();
  r.recursion_text = format_recursion(induced_recursion(ctx));
  r.phi_matches = r.phi_text == "b -> d\nc -> 1\nd -> e\ne -> a\n";
  r.table_matches = r.recursion_text == kTernaryExampleTable;
  r.core_trivial = core(jc.phi).is_trivial();
  r.stable_kernel_trivial = stable_kernel(ctx).is_trivial();
  return r;
}

}  // namespace selfsim
