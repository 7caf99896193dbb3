#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <utility>

#include <CLI11.hpp>

#include "selfsim/action.hpp"
#include "selfsim/errors.hpp"
#include "selfsim/harness.hpp"
#include "selfsim/jordan.hpp"

using namespace selfsim;

namespace {

enum Exit { kOk = 0, kVerification = 1, kParse = 2, kNotFound = 3, kCap = 4 };

struct FileNotFound : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileNotFound("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

GroupPtr load_group(const std::string& path) { return build_group(parse_group_spec(read_file(path))); }

std::string vec(const Vector& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out;
}

void summary(const std::string& key, const auto& value) { std::cout << key << '=' << value << '\n'; }

int cmd_core(const std::string& spec, const std::string& phi_file) {
  auto g = load_group(spec);
  auto phi = parse_virtual_endo(g, read_file(phi_file));
  const auto c = core(phi);
  std::cout << phi.to_text();
  std::cout << "core = ";
  if (c == distinguished_subgroup(g)) {
    std::cout << "H";
  } else if (c.is_trivial()) {
    std::cout << "1";
  } else {
    std::string sep = "<";
    for (ElemId x : minimal_generating_set(c)) std::cout << std::exchange(sep, ", ") << g->format(x);
    std::cout << ">";
  }
  std::cout << '\n' << (c.is_trivial() ? "simple" : "not simple") << '\n';
  summary("core_order", c.order());
  summary("kernel_order", phi.kernel().order());
  summary("simple", c.is_trivial());
  return kOk;
}

int cmd_search(const std::string& spec, bool count) {
  auto g = load_group(spec);
  const auto search = find_simple(distinguished_subgroup(g), count);
  if (search.first)
    std::cout << "simple:\n" << search.first->to_text();
  else
    std::cout << "simple: none\n";
  summary("split", is_split(*g));
  summary("elementary", g->spec().H.is_elementary());
  summary("simple_exists", search.first.has_value());
  summary("homomorphisms", search.homomorphisms);
  if (search.simple_count) summary("simple_count", *search.simple_count);
  return kOk;
}

int cmd_jordan(const std::string& spec) {
  auto g = load_group(spec);
  const auto jc = construct_phi(g);
  std::cout << "blocks:";
  for (auto s : jc.jordan.block_sizes) std::cout << ' ' << s;
  std::cout << "\nbasis:\n";
  for (std::size_t i = 0; i < jc.basis_elements.size(); ++i)
    std::cout << "  " << vec(jc.jordan.basis[i]) << "  " << g->format(jc.basis_elements[i]) << '\n';
  std::cout << jc.phi.to_text();
  const auto report = verify_construction(jc);
  summary("block_count", jc.jordan.block_count());
  summary("kernel_order", jc.phi.kernel().order());
  summary("core_trivial", report.core_trivial);
  summary("verified", report.holds());
  return report.holds() ? kOk : kVerification;
}

int cmd_action(const std::string& spec, const std::string& phi_file, std::size_t depth) {
  auto g = load_group(spec);
  auto phi = parse_virtual_endo(g, read_file(phi_file));
  const auto ctx = make_context(phi);
  std::cout << format_recursion(induced_recursion(ctx));
  if (depth > 0) {
    const auto k = depth_kernel(ctx, depth);
    summary("depth", depth);
    summary("depth_kernel_order", k.order());
  } else {
    const auto sk = stabilize_kernel(ctx);
    summary("stable_depth", sk.depth);
    summary("kernel_order", sk.kernel.order());
    summary("faithful", sk.kernel.is_trivial());
  }
  return kOk;
}

int cmd_verify_theorem(const std::vector<int>& primes, std::size_t max_h, bool count, std::size_t threads,
                       const std::string& report_path) {
  SweepConfig cfg;
  cfg.primes = primes;
  if (max_h > 0)
    for (int p : primes) cfg.max_h_order[p] = max_h;
  cfg.count_simple = count;
  cfg.threads = threads;
  std::ofstream report;
  if (!report_path.empty()) {
    report.open(report_path);
    if (!report) throw FileNotFound("cannot write " + report_path);
  }
  std::size_t cases = 0, simple = 0;
  const auto start = std::chrono::steady_clock::now();
  verify_theorem(cfg, [&](const CaseVerdict& v) {
    ++cases;
    simple += v.simple_exists;
    const auto line = format_case_record(v);
    if (report.is_open()) report << line << '\n';
    else std::cout << line << '\n';
  });
  const std::chrono::duration<double> secs = std::chrono::steady_clock::now() - start;
  summary("cases", cases);
  summary("simple_cases", simple);
  summary("violations", 0);
  summary("seconds", secs.count());
  return kOk;
}

int cmd_dihedral(const std::vector<int>& ns) {
  for (const auto& r : verify_dihedral(ns)) {
    std::cout << "D_" << r.sweep.group->order() << " (n=" << r.n << ")\n";
    for (const auto& d : r.sweep.domains)
      std::cout << "  domain <" << d.generators << "> order=" << d.domain.order() << " homomorphisms=" << d.homomorphisms
                << " simple=" << d.simple << '\n';
    summary("total_simple", r.sweep.total_simple());
  }
  return kOk;
}

int cmd_kpn(int p, int n) {
  const auto rec = kpn_recursion(p, n);
  std::cout << format_recursion(rec);
  summary("order", group_order_by_closure(rec, static_cast<std::size_t>(n)));
  return kOk;
}

int cmd_example() {
  const auto r = verify_ternary_example();
  std::cout << r.phi_text << '\n' << r.recursion_text;
  summary("phi_matches", r.phi_matches);
  summary("table_matches", r.table_matches);
  summary("core_trivial", r.core_trivial);
  summary("faithful", r.stable_kernel_trivial);
  return r.holds() ? kOk : kVerification;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simple virtual endomorphisms of extensions of abelian p-groups"};
  app.require_subcommand(1);

  std::string spec, phi_file, report_path;
  bool count = false;
  std::size_t depth = 0, max_h = 0, threads = 1;
  std::vector<int> primes{2, 3}, ns{3, 4};
  int p = 2, n = 1;

  auto* core_cmd = app.add_subcommand("core", "Core of a virtual endomorphism");
  core_cmd->add_option("spec", spec, "Group spec file")->required();
  core_cmd->add_option("phi", phi_file, "Virtual endomorphism file")->required();

  auto* search_cmd = app.add_subcommand("search", "Search for a simple virtual endomorphism with domain H");
  search_cmd->add_option("spec", spec, "Group spec file")->required();
  search_cmd->add_flag("--count", count, "Count all simple ones");

  auto* jordan_cmd = app.add_subcommand("jordan", "Jordan construction of a simple phi");
  jordan_cmd->add_option("spec", spec, "Group spec file")->required();

  auto* action_cmd = app.add_subcommand("action", "Wreath recursion and kernel of the induced action");
  action_cmd->add_option("spec", spec, "Group spec file")->required();
  action_cmd->add_option("phi", phi_file, "Virtual endomorphism file")->required();
  action_cmd->add_option("--depth", depth, "Report the kernel at this depth only");

  auto* theorem_cmd = app.add_subcommand("verify-theorem", "Exhaustive sweep of extension specs");
  theorem_cmd->add_option("--p", primes, "Primes to sweep");
  theorem_cmd->add_option("--max-h", max_h, "Largest |H| for every prime");
  theorem_cmd->add_flag("--count", count, "Count all simple phi per case");
  theorem_cmd->add_option("--threads", threads, "Worker threads");
  theorem_cmd->add_option("--report", report_path, "Write case records to this file");

  auto* dihedral_cmd = app.add_subcommand("dihedral", "Exhaustive search on dihedral 2-groups");
  dihedral_cmd->add_option("--n", ns, "Values of n (group order 2^{n+1})");

  auto* kpn_cmd = app.add_subcommand("kpn", "Iterated wreath product of C_p");
  kpn_cmd->add_option("--p", p)->required();
  kpn_cmd->add_option("--n", n)->required();

  auto* example_cmd = app.add_subcommand("example", "Ternary worked example");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kParse;
  }

  try {
    if (core_cmd->parsed()) return cmd_core(spec, phi_file);
    if (search_cmd->parsed()) return cmd_search(spec, count);
    if (jordan_cmd->parsed()) return cmd_jordan(spec);
    if (action_cmd->parsed()) return cmd_action(spec, phi_file, depth);
    if (theorem_cmd->parsed()) return cmd_verify_theorem(primes, max_h, count, threads, report_path);
    if (dihedral_cmd->parsed()) return cmd_dihedral(ns);
    if (kpn_cmd->parsed()) return cmd_kpn(p, n);
    if (example_cmd->parsed()) return cmd_example();
  } catch (const FileNotFound& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNotFound;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << '\n';
    return kCap;
  } catch (const VerificationFailure& e) {
    std::cerr << "verification failed: " << e.what() << '\n';
    return kVerification;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kParse;
  }
  return kParse;
}
