#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "selfsim/action.hpp"
#include "selfsim/groups.hpp"
#include "selfsim/jordan.hpp"
#include "selfsim/virtendo.hpp"

namespace selfsim {

struct SweepConfig {
  std::vector<int> primes{2, 3};
  /// Largest |H| swept per prime.
  std::map<int, std::size_t> max_h_order{{2, 16}, {3, 27}};
  bool include_nonsplit = true;
  std::size_t regularity_cap = 729;
  /// Count every simple phi instead of stopping at the first.
  bool count_simple = false;
  /// Construction, lemma and kernel cross-checks on every case with a simple phi.
  bool deep_checks = true;
  /// Number of leading homomorphisms kept per case in CaseVerdict::samples.
  std::size_t samples_per_case = 0;
  std::size_t threads = 1;
};

/// Outcome of the cross-checks run on one case.
struct CaseChecks {
  bool splitting_lemma = true;
  bool regular_image = true;
  bool prop_k = true;
  std::size_t prop_k_runs = 0;
  bool construction = true;
  bool construction_ran = false;
  bool kernel_order = true;
  /// stable_kernel == core and faithful <=> simple on every checked phi.
  bool kernel_equals_core = true;
  std::size_t kernel_checks = 0;

  bool all() const {
    return splitting_lemma && regular_image && prop_k && construction && kernel_order && kernel_equals_core;
  }
};

struct CaseVerdict {
  explicit CaseVerdict(ExtensionSpec s) : spec(std::move(s)) {}

  ExtensionSpec spec;
  std::size_t group_order = 0;
  bool split = false;
  bool elementary = false;
  bool simple_exists = false;
  std::optional<std::uint64_t> simple_count;
  std::uint64_t homomorphisms_visited = 0;
  std::optional<VirtualEndo> witness;
  std::optional<std::string> witness_recursion;
  /// Jordan-constructed phi, when H is elementary and G splits.
  std::optional<VirtualEndo> constructed;
  std::vector<VirtualEndo> samples;
  CaseChecks checks;

  bool theorem_predicate() const { return simple_exists == (split && elementary); }
};

/// C_{p^{e_1}} x ... with e_1 >= e_2 >= ..., ordered by order, then exponents.
std::vector<AbelianPGroup> abelian_p_groups(int p, std::size_t max_order);
/// Every well-defined alpha on H with alpha^p = 1 (brute force over matrices).
std::vector<FpMatrix> automorphisms_of_order_dividing_p(const AbelianPGroup& h);
std::vector<Vector> fixed_points(const AbelianPGroup& h, const FpMatrix& alpha);
/// All specs of the sweep in enumeration order.
std::vector<ExtensionSpec> sweep_specs(const SweepConfig& cfg);

/// Runs the search and the cross-checks on one spec. Throws
/// VerificationFailure, naming the spec, when any check fails.
CaseVerdict verify_case(const ExtensionSpec& spec, const SweepConfig& cfg);

/// verify_case over sweep_specs(cfg); `on_case` sees verdicts in enumeration order.
std::vector<CaseVerdict> verify_theorem(const SweepConfig& cfg,
                                        const std::function<void(const CaseVerdict&)>& on_case = {});

/// FNV-1a over the prime, the moduli and the entries, as 16 hex digits.
std::string alpha_hash(const FpMatrix& alpha);
/// `case: p=.. H=.. alpha=.. h0=.. split=.. elementary=.. simple_exists=.. simple_count=..`
std::string format_case_record(const CaseVerdict& v);

struct DomainCount {
  Subgroup domain;
  std::string generators;
  std::uint64_t homomorphisms = 0;
  std::uint64_t simple = 0;
};

struct DomainSweep {
  GroupPtr group;
  std::vector<DomainCount> domains;
  std::uint64_t total_simple() const;
};

/// Counts homomorphisms and simple ones on every index-p subgroup of G.
DomainSweep sweep_domains(const GroupPtr& g);

struct DihedralReport {
  int n;
  DomainSweep sweep;
};

/// Throws VerificationFailure if any D_{2^n} admits a simple phi.
std::vector<DihedralReport> verify_dihedral(const std::vector<int>& n_values);

/// The recursion table of the ternary example group.
extern const char* const kTernaryExampleTable;

struct ExampleReport {
  std::string phi_text;
  std::string recursion_text;
  bool phi_matches = false;
  bool table_matches = false;
  bool core_trivial = false;
  bool stable_kernel_trivial = false;

  bool holds() const { return phi_matches && table_matches && core_trivial && stable_kernel_trivial; }
};

/// Builds C_3^4 extended by the 2+1+1 Jordan automorphism, constructs phi,
/// and compares the induced recursion with kTernaryExampleTable.
ExampleReport verify_ternary_example();

}  // namespace selfsim
