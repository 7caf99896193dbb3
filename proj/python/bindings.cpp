#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "selfsim/action.hpp"
#include "selfsim/errors.hpp"
#include "selfsim/harness.hpp"
#include "selfsim/jordan.hpp"

namespace py = pybind11;
using namespace selfsim;

namespace {

struct Group {
  GroupPtr ptr;
};

std::vector<std::string> names(const Group& g, const std::vector<ElemId>& xs) {
  std::vector<std::string> out;
  for (ElemId x : xs) out.push_back(g.ptr->format(x));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Simple virtual endomorphisms of extensions of abelian p-groups";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<CapExceeded>(m, "CapExceeded");
  py::register_exception<VerificationFailure>(m, "VerificationFailure");

  py::class_<Subgroup>(m, "Subgroup")
      .def_property_readonly("order", &Subgroup::order)
      .def_property_readonly("elements", &Subgroup::elements)
      .def("is_trivial", &Subgroup::is_trivial)
      .def("__len__", &Subgroup::order)
      .def("__eq__", [](const Subgroup& a, const Subgroup& b) { return a == b; });

  py::class_<Group>(m, "Group")
      .def_static(
          "from_spec", [](const std::string& text) { return Group{build_group(parse_group_spec(text))}; },
          py::arg("text"), "Builds G from group spec text (keys p, H, alpha, h0).")
      .def_static("dihedral", [](int n) { return Group{dihedral(n)}; })
      .def_static("ternary_example", [] { return Group{build_group(ternary_example_spec())}; })
      .def_property_readonly("order", [](const Group& g) { return g.ptr->order(); })
      .def_property_readonly("p", [](const Group& g) { return g.ptr->p(); })
      .def_property_readonly("a", [](const Group& g) { return g.ptr->a(); })
      .def_property_readonly("spec", [](const Group& g) { return format_group_spec(g.ptr->spec()); })
      .def("element", [](const Group& g, const std::string& text) { return g.ptr->parse_element(text); })
      .def("format", [](const Group& g, ElemId x) { return g.ptr->format(x); })
      .def("mul", [](const Group& g, ElemId x, ElemId y) { return g.ptr->mul(x, y); })
      .def("inv", [](const Group& g, ElemId x) { return g.ptr->inv(x); })
      .def("element_order", [](const Group& g, ElemId x) { return g.ptr->element_order(x); })
      .def("is_split", [](const Group& g) { return is_split(*g.ptr); })
      .def("is_abelian", [](const Group& g) { return g.ptr->is_abelian(); })
      .def("is_regular", [](const Group& g) { return is_regular_p_group(g.ptr); })
      .def("distinguished_subgroup", [](const Group& g) { return distinguished_subgroup(g.ptr); })
      .def("index_p_subgroups", [](const Group& g) { return index_p_subgroups(g.ptr); })
      .def("names", &names);

  py::class_<VirtualEndo>(m, "VirtualEndo")
      .def_static(
          "parse", [](const Group& g, const std::string& text) { return parse_virtual_endo(g.ptr, text); },
          py::arg("group"), py::arg("text"))
      .def("__call__", &VirtualEndo::evaluate)
      .def_property_readonly("domain", &VirtualEndo::domain)
      .def("kernel", &VirtualEndo::kernel)
      .def("image", &VirtualEndo::image)
      .def("is_injective", &VirtualEndo::is_injective)
      .def("to_text", &VirtualEndo::to_text)
      .def("core", [](const VirtualEndo& phi) { return core(phi); })
      .def("is_simple", [](const VirtualEndo& phi) { return is_simple(phi); })
      .def("recursion", [](const VirtualEndo& phi) { return format_recursion(induced_recursion(make_context(phi))); })
      .def(
          "stable_kernel", [](const VirtualEndo& phi, std::size_t cap) { return stable_kernel(make_context(phi), cap); },
          py::arg("depth_cap") = 0)
      .def("depth_kernel",
           [](const VirtualEndo& phi, std::size_t depth) { return depth_kernel(make_context(phi), depth); });

  m.def(
      "find_simple",
      [](const Subgroup& domain, bool count) {
        const auto s = find_simple(domain, count);
        py::dict out;
        out["first"] = s.first ? py::cast(*s.first) : py::none();
        out["homomorphisms"] = s.homomorphisms;
        out["simple_count"] = s.simple_count ? py::cast(*s.simple_count) : py::none();
        return out;
      },
      py::arg("domain"), py::arg("count") = false);

  m.def(
      "enumerate_virtual_endos", [](const Subgroup& d) { return enumerate_virtual_endos(d); }, py::arg("domain"));

  m.def("construct_phi", [](const Group& g) {
    const auto jc = construct_phi(g.ptr);
    py::dict out;
    out["blocks"] = jc.jordan.block_sizes;
    out["basis"] = names(g, jc.basis_elements);
    out["phi"] = jc.phi;
    out["verified"] = verify_construction(jc).holds();
    return out;
  });

  m.def(
      "kpn_order",
      [](int p, int n) { return group_order_by_closure(kpn_recursion(p, n), static_cast<std::size_t>(n)); },
      py::arg("p"), py::arg("n"));
  m.def("kpn_recursion", [](int p, int n) { return format_recursion(kpn_recursion(p, n)); });

  m.def("verify_ternary_example", [] {
    const auto r = verify_ternary_example();
    py::dict out;
    out["phi"] = r.phi_text;
    out["recursion"] = r.recursion_text;
    out["holds"] = r.holds();
    return out;
  });

  m.def(
      "verify_dihedral",
      [](const std::vector<int>& ns) {
        std::vector<std::uint64_t> totals;
        for (const auto& r : verify_dihedral(ns)) totals.push_back(r.sweep.total_simple());
        return totals;
      },
      py::arg("n_values"));

  m.def(
      "verify_theorem",
      [](const std::vector<int>& primes, std::size_t max_h, bool count, std::size_t threads) {
        SweepConfig cfg;
        cfg.primes = primes;
        cfg.max_h_order.clear();
        for (int p : primes) cfg.max_h_order[p] = max_h;
        cfg.count_simple = count;
        cfg.threads = threads;
        std::vector<std::string> records;
        {
          py::gil_scoped_release release;
          verify_theorem(cfg, [&](const CaseVerdict& v) { records.push_back(format_case_record(v)); });
        }
        return records;
      },
      py::arg("primes"), py::arg("max_h"), py::arg("count") = false, py::arg("threads") = 1);
}
