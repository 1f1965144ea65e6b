#include "tmatch/counting.hpp"
#include "tmatch/families.hpp"
#include "tmatch/harness.hpp"
#include "tmatch/matching.hpp"
#include "tmatch/teaching.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace tmatch;

namespace {

py::object witness_to_py(const Witness& w)
{
    struct Visitor {
        py::object operator()(std::monostate) const { return py::none(); }
        py::object operator()(const SaturatingMatching& m) const
        {
            py::list out;
            for (const auto& s : m.assignment) out.append(py::cast(s.pairs()));
            return out;
        }
        py::object operator()(const std::vector<LabeledSample>& v) const
        {
            py::list out;
            for (const auto& s : v) out.append(py::cast(s.pairs()));
            return out;
        }
        py::object operator()(const std::vector<int>& v) const { return py::cast(v); }
        py::object operator()(const SubsetTeachingSequence& seq) const { return py::str(write_sequence(seq)); }
    };
    return std::visit(Visitor{}, w);
}

py::dict result_to_py(const ParamResult& r)
{
    py::dict d;
    d["value"] = r.value;
    d["exact"] = r.exact;
    d["lower"] = r.lower;
    d["upper"] = r.upper;
    d["method"] = r.method;
    d["witness"] = witness_to_py(r.witness);
    return d;
}

py::dict report_to_py(const CampaignReport& rep)
{
    py::dict d;
    d["checks"] = rep.checks;
    d["passes"] = rep.passes;
    d["inconclusive"] = rep.inconclusive;
    d["violations"] = rep.violations.size();
    d["certified"] = rep.certified.size();
    d["exit_code"] = rep.exit_code();
    d["text"] = rep.to_text();
    return d;
}

SearchLimits limits_of(std::uint64_t node_budget)
{
    SearchLimits l;
    l.node_budget = node_budget;
    return l;
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Teaching parameters of finite concept classes";

    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<SizeGuardError>(m, "SizeGuardError", PyExc_ValueError);

    py::class_<ConceptClass>(m, "ConceptClass")
        .def(py::init<int, std::vector<std::uint64_t>>(), py::arg("n"), py::arg("rows"))
        .def_property_readonly("n", &ConceptClass::n)
        .def_property_readonly("k", &ConceptClass::k)
        .def_property_readonly("rows",
                               [](const ConceptClass& c) {
                                   return std::vector<std::uint64_t>(c.rows().begin(), c.rows().end());
                               })
        .def("same_rows", &ConceptClass::same_rows)
        .def("__eq__", [](const ConceptClass& a, const ConceptClass& b) { return a == b; })
        .def("__repr__", [](const ConceptClass& c) {
            return "<ConceptClass k=" + std::to_string(c.k()) + " n=" + std::to_string(c.n()) + ">";
        });

    m.def("parse_ccm", &parse_ccm, py::arg("text"));
    m.def("write_ccm", &write_ccm, py::arg("cls"));
    m.def("random_class", &random_class, py::arg("k"), py::arg("n"), py::arg("seed"));
    m.def("free_combination", &free_combination, py::arg("a"), py::arg("b"));

    m.def("powerset", &powerset, py::arg("n"));
    m.def("binary_counter_class", &binary_counter_class, py::arg("k"), py::arg("n"));
    m.def("warmuth", &warmuth);
    m.def("warmuth_extended", &warmuth_extended);
    m.def("std_example_pair", &std_example_pair);
    m.def("add_all_ones", &add_all_ones, py::arg("cls"));

    m.def(
        "compute",
        [](const ConceptClass& c, const std::string& param, std::uint64_t node_budget) {
            return result_to_py(compute_param(c, parse_param(param), limits_of(node_budget)));
        },
        py::arg("cls"), py::arg("param"), py::arg("node_budget") = SearchLimits{}.node_budget);
    m.def("param_names", [] {
        std::vector<std::string> out;
        for (int i = 0; i <= static_cast<int>(Param::min_vcd_rtd); ++i) out.push_back(param_name(static_cast<Param>(i)));
        return out;
    });

    m.def("smn_prime", py::overload_cast<const ConceptClass&>(&smn_prime), py::arg("cls"));
    m.def("an_prime", &an_prime, py::arg("cls"));
    m.def("an_double_prime", &an_double_prime, py::arg("cls"));
    m.def("gmn_prime", py::overload_cast<const ConceptClass&>(&gmn_prime), py::arg("cls"));
    m.def("teaching_dim", [](std::uint64_t row, const ConceptClass& c) { return teaching_dim(row, c).size; },
          py::arg("row"), py::arg("cls"));

    m.def(
        "validate_sequence",
        [](const ConceptClass& c, const std::string& text) {
            const auto check = validate_sequence(c, parse_sequence(text, c));
            py::list violations;
            for (const auto& v : check.violations) {
                violations.append(py::make_tuple(to_string(v.kind), v.step, v.concepts));
            }
            py::dict d;
            d["valid"] = check.valid;
            d["cost"] = check.cost;
            d["violations"] = violations;
            return d;
        },
        py::arg("cls"), py::arg("sequence"));

    m.def(
        "verify_hierarchy",
        [](const ConceptClass& c, std::uint64_t node_budget) {
            return report_to_py(verify_hierarchy(c, limits_of(node_budget)));
        },
        py::arg("cls"), py::arg("node_budget") = 1'000'000);

    m.def(
        "powerset_closed_forms",
        [](int n) {
            const auto f = powerset_closed_forms(n);
            const auto g = gmn_powerset_upper(n);
            py::dict d;
            d["an"] = f.an;
            d["smn_prime"] = f.smn_prime;
            d["gmn_prime"] = f.gmn_prime;
            d["gmn_upper"] = g.bound;
            return d;
        },
        py::arg("n"));
    m.def("p_star", &p_star, py::arg("tol") = 1e-9);
}
