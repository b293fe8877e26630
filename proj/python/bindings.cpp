#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "helpkit/arith.hpp"
#include "helpkit/constructions.hpp"
#include "helpkit/group_io.hpp"
#include "helpkit/help.hpp"
#include "helpkit/lemmas.hpp"
#include "helpkit/report.hpp"
#include "helpkit/structure.hpp"

namespace py = pybind11;
using namespace helpkit;

namespace {

// Hands a JSON document to Python through the json module.
py::object to_python(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

nlohmann::json from_python(const py::object& o) {
  return nlohmann::json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

const CorpusEntry& find_entry(const std::vector<CorpusEntry>& corpus, const std::string& id) {
  for (const auto& e : corpus)
    if (e.id == id) return e;
  throw InvalidInput("no corpus entry \"" + id + "\"");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Finite groups, HeLP audits and lemma checks";

  py::register_exception<GroupError>(m, "GroupError", PyExc_ValueError);

  py::class_<FiniteGroup>(m, "Group")
      .def_property_readonly("order", &FiniteGroup::order)
      .def_property_readonly("class_count", [](const FiniteGroup& g) { return g.classes().size(); })
      .def("element_order", &FiniteGroup::element_order)
      .def("mul", &FiniteGroup::mul)
      .def("inv", &FiniteGroup::inv)
      .def("label", &FiniteGroup::label)
      .def("class_of", &FiniteGroup::class_of)
      .def("structure", [](const FiniteGroup& g) { return to_python(to_json(g, structure_report(g))); })
      .def("cayley_text", [](const FiniteGroup& g) { return write_cayley(g); });

  m.def("parse_group", [](const std::string& text) { return parse_group_text(text).group; }, py::arg("text"));
  m.def("read_group", [](const std::string& path) { return read_group_file(path).group; }, py::arg("path"));

  m.def(
      "corpus_manifest", [](std::size_t max_order) { return to_python(manifest_json(build_corpus(max_order), max_order)); },
      py::arg("max_order") = 64);
  m.def(
      "corpus_group",
      [](const std::string& id, std::size_t max_order) { return find_entry(build_corpus(max_order), id).group; },
      py::arg("id"), py::arg("max_order") = 64);

  m.def(
      "audit",
      [](const FiniteGroup& g, std::vector<std::uint64_t> orders, std::int64_t bound, const std::string& characters,
         std::uint64_t node_budget, std::size_t workers) {
        HelpOptions options;
        options.bound = bound;
        options.characters = parse_selection(characters);
        options.node_budget = node_budget;
        options.workers = workers;
        if (orders.empty()) orders = divisors(g.order());
        py::gil_scoped_release release;
        const auto report = zc_audit(g, orders, options);
        py::gil_scoped_acquire acquire;
        return to_python(to_json(g, report));
      },
      py::arg("group"), py::arg("orders") = std::vector<std::uint64_t>{}, py::arg("bound") = 5,
      py::arg("characters") = "all", py::arg("node_budget") = HelpOptions{}.node_budget, py::arg("workers") = 1);

  m.def(
      "trivial_pa",
      [](const FiniteGroup& g, Element x) {
        if (x >= g.order()) throw InvalidInput("element out of range");
        return trivial_pa(g, x).entries;
      },
      py::arg("group"), py::arg("element"));

  m.def(
      "genuine_element_passes",
      [](const FiniteGroup& g, Element x, const std::string& characters) {
        if (x >= g.order()) throw InvalidInput("element out of range");
        HelpOptions options;
        options.characters = parse_selection(characters);
        const auto ctx = make_context(g, options);
        return filter_accepts(ctx, trivial_chain(g, x));
      },
      py::arg("group"), py::arg("element"), py::arg("characters") = "all");

  m.def(
      "lemma_ledger",
      [](const py::object& manifest, std::size_t max_order, std::size_t workers, bool timing) {
        const auto entries = manifest.is_none() ? build_corpus(max_order) : load_manifest(from_python(manifest));
        LemmaSuiteOptions options;
        options.workers = workers;
        nlohmann::json ledger;
        {
          py::gil_scoped_release release;
          ledger = run_lemma_suite(entries, options);
        }
        return to_python(timing ? ledger : strip_timing(ledger));
      },
      py::arg("manifest") = py::none(), py::arg("max_order") = 64, py::arg("workers") = 1, py::arg("timing") = true);
}
