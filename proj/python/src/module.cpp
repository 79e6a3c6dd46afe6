// Python bindings. Structured results cross the boundary as JSON text and
// are decoded on the Python side; states and operators as numpy / scipy.

#include <optional>
#include <string>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "parasusy/algebra.hpp"
#include "parasusy/basis.hpp"
#include "parasusy/conventions.hpp"
#include "parasusy/errors.hpp"
#include "parasusy/report.hpp"
#include "parasusy/rewrite.hpp"
#include "parasusy/susy.hpp"

namespace py = pybind11;
using namespace parasusy;

namespace {

ParaRep make_rep(int p, int cutoff, std::optional<int> level_cap,
                 const std::optional<std::string>& convention) {
  const ParaOrder order(p);
  const Cutoff cut = level_cap ? Cutoff(cutoff, *level_cap) : Cutoff::with_default_levels(cutoff);
  const GreenConvention conv =
      convention ? GreenConvention::parse(*convention) : discover_convention(order);
  return build_rep(order, cut, conv);
}

Operator lookup(const std::string& name) {
  const auto op = operator_from_name(name);
  if (!op) throw std::invalid_argument("unknown operator '" + name + "'");
  return *op;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "parasusy native core";

  py::register_exception<TruncationError>(m, "TruncationError", PyExc_ValueError);
  py::register_exception<ConventionError>(m, "ConventionError", PyExc_RuntimeError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  py::class_<ParaRep>(m, "Rep")
      .def(py::init(&make_rep), py::arg("p"), py::arg("cutoff") = 6,
           py::arg("level_cap") = py::none(), py::arg("convention") = py::none())
      .def_property_readonly("p", &ParaRep::p)
      .def_property_readonly("cutoff", [](const ParaRep& r) { return r.cutoff().per_component(); })
      .def_property_readonly("level_cap", [](const ParaRep& r) { return r.cutoff().level_cap(); })
      .def_property_readonly("dim", &ParaRep::dim)
      .def_property_readonly("convention",
                             [](const ParaRep& r) { return r.convention().to_string(); })
      .def("vacuum", &ParaRep::vacuum)
      .def(
          "operator",
          [](const ParaRep& r, const std::string& name) {
            SparseOp out = r.op(lookup(name));
            out.makeCompressed();  // the scipy conversion reads the raw CSR arrays
            return out;
          },
          py::arg("name"))
      .def("apply_word",
           [](const ParaRep& r, const std::string& word) { return apply_word(r, parse_word(word)); },
           py::arg("word"))
      .def("metadata", [](const ParaRep& r) { return rep_metadata(r).dump(); })
      .def("__repr__", [](const ParaRep& r) {
        return "<Rep p=" + std::to_string(r.p()) + " cutoff=" +
               std::to_string(r.cutoff().per_component()) + " dim=" + std::to_string(r.dim()) +
               " convention=" + r.convention().to_string() + ">";
      });

  m.def("operator_names", [] {
    std::vector<std::string> out;
    for (Operator op : all_operators()) out.emplace_back(name_of(op));
    return out;
  });

  m.def(
      "_convention_search",
      [](int p, int cutoff, double tolerance, int probes, std::uint64_t seed) {
        return to_json(convention_search(ParaOrder(p), cutoff, tolerance, probes, seed)).dump();
      },
      py::arg("p"), py::arg("cutoff") = kScreeningCutoff, py::arg("tolerance") = 1e-10,
      py::arg("probes") = 8, py::arg("seed") = 42);

  m.def("discover_convention", [](int p) { return discover_convention(ParaOrder(p)).to_string(); },
        py::arg("p"));

  m.def(
      "_verify",
      [](const ParaRep& rep, int probes, std::uint64_t seed, double tolerance) {
        SuiteOptions options;
        options.probes = probes;
        options.seed = seed;
        options.tolerance = tolerance;
        Json arr = Json::array();
        for (const auto& c : verify_suite(rep, options)) arr.push_back(to_json(c));
        return arr.dump();
      },
      py::arg("rep"), py::arg("probes") = 8, py::arg("seed") = 42, py::arg("tolerance") = 1e-10);

  m.def(
      "_sectors",
      [](const ParaRep& rep, int level_cap) {
        const auto fock = cyclic_basis(rep, level_cap);
        Json arr = Json::array();
        for (const auto& row : sector_table(rep, fock, level_cap)) arr.push_back(to_json(row));
        return arr.dump();
      },
      py::arg("rep"), py::arg("level_cap"));

  m.def(
      "_spectrum",
      [](const ParaRep& rep, int level_cap) {
        const auto table = spectrum(rep, level_cap);
        Json j;
        j["spectrum"] = to_json(table);
        j["witten"] = to_json(witten_check(table));
        return j.dump();
      },
      py::arg("rep"), py::arg("level_cap"));

  m.def(
      "_reduce",
      [](const std::string& word, int p) {
        return to_json(semantic_vanishing(reduce(parse_word(word)), ParaOrder(p))).dump();
      },
      py::arg("word"), py::arg("p"));

  m.def(
      "validate_reduction",
      [](const ParaRep& rep, const std::string& word) {
        return validate_reduction(rep, parse_word(word));
      },
      py::arg("rep"), py::arg("word"));

  m.def(
      "closed_form_basis",
      [](const ParaRep& rep, int m_, int n, int two_s) {
        return closed_form_basis(rep, SubspaceLabel{m_, n, two_s});
      },
      py::arg("rep"), py::arg("m"), py::arg("n"), py::arg("two_s") = 1);

  m.def(
      "monomial_norm_squared",
      [](int m_, int n, int p) {
        return py::int_(py::str(monomial_norm_squared(m_, n, ParaOrder(p)).str()));
      },
      py::arg("m"), py::arg("n"), py::arg("p"));

  m.def("transition_coeff", [](int p, int m_, int n) { return transition_coeff(p, m_, n).value; },
        py::arg("p"), py::arg("m"), py::arg("n"));

  m.def("expected_degeneracy",
        [](int level, int p) { return expected_degeneracy(level, ParaOrder(p)); }, py::arg("level"),
        py::arg("p"));
}
