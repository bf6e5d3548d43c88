#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "scissors/acceptance.hpp"
#include "scissors/reports.hpp"

namespace py = pybind11;
using namespace scissors;

namespace {

Json to_json(const py::object& o) {
  if (py::isinstance<py::str>(o)) return parse_json(o.cast<std::string>());
  return parse_json(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

py::object from_json(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

template <class F>
py::object run(F&& f) {
  Json out;
  {
    py::gil_scoped_release release;
    out = f();
  }
  return from_json(out);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Buildings, Dehn complexes and classical Dehn invariants";
  py::register_exception<Error>(m, "ScissorsError", PyExc_ValueError);

  m.def(
      "homology",
      [](const py::object& input, const std::string& coeff, int closure_rounds) {
        Json in = to_json(input);
        Coeff c = parse_coeff(coeff);
        return run([&] { return homology_report(in, c, closure_rounds); });
      },
      py::arg("input"), py::arg("coeff") = "z", py::arg("closure_rounds") = 3,
      "Reduced homology of a simplicial set or of the building of a subspace family.");
  m.def(
      "dehn_complex",
      [](const py::object& family, const py::object& group, int truncate, const std::string& coeff,
         int closure_rounds) {
        Json f = to_json(family), g = to_json(group);
        Coeff c = parse_coeff(coeff);
        return run([&] { return dehn_complex_report(f, g, truncate, c, closure_rounds); });
      },
      py::arg("family"), py::arg("group"), py::arg("truncate") = -1, py::arg("coeff") = "zhalf",
      py::arg("closure_rounds") = 3);
  m.def(
      "classical",
      [](const py::object& polytope, int bits) {
        Json p = to_json(polytope);
        return run([&] { return classical_report(p, bits); });
      },
      py::arg("polytope"), py::arg("bits") = 200, "Dehn invariant and volume of a polytope.");
  m.def(
      "ccs",
      [](const py::object& tuple, int bits) {
        Json t = to_json(tuple);
        return run([&] { return ccs_report(t, bits); });
      },
      py::arg("tuple"), py::arg("bits") = 200);

  py::class_<CriterionResult>(m, "CriterionResult")
      .def_readonly("id", &CriterionResult::id)
      .def_readonly("name", &CriterionResult::name)
      .def_readonly("passed", &CriterionResult::pass)
      .def_readonly("seconds", &CriterionResult::seconds)
      .def_readonly("limit", &CriterionResult::limit)
      .def_readonly("detail", &CriterionResult::detail)
      .def("__repr__", &format_result);
  m.def("run_criterion", &run_criterion, py::arg("id"), py::call_guard<py::gil_scoped_release>());
  m.def("criteria_for_level", &criteria_for_level, py::arg("level"));
}
