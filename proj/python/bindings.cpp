#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "commands.hpp"

namespace py = pybind11;
using namespace csheaf;
using namespace csheaf::app;

namespace {

std::string run(const std::string& command, const std::string& fixtureText, const std::string& suite, int jobs, int nmax) {
  auto fx = parseFixture(fixtureText);
  Options opt;
  opt.jobs = jobs;
  opt.nmax = nmax;
  std::string s = command == "verify" && suite.empty() ? "all" : suite;
  py::gil_scoped_release release;
  return runCommand(command, s, fx, opt).toJson().dump(2);
}

std::vector<long> characterDegrees(const std::string& groupSpec) {
  Fixture fx;
  fx.group = groupSpec;
  return buildGroup(fx)->characterTable().degrees();
}

std::vector<std::vector<std::string>> characterTable(const std::string& groupSpec) {
  Fixture fx;
  fx.group = groupSpec;
  auto g = buildGroup(fx);
  const auto& tab = g->characterTable();
  std::vector<std::vector<std::string>> out;
  for (const auto& row : tab.rows()) {
    out.emplace_back();
    for (const auto& z : row) out.back().push_back(z.str());
  }
  return out;
}

std::vector<long> innerFormOrders(const std::string& schemeSpec) {
  std::vector<long> out;
  for (const auto& f : buildScheme(schemeSpec)->h1().forms) out.push_back(static_cast<long>(f.group->order()));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact character computations for finite unipotent and twisted groups";

  py::register_exception<FixtureError>(m, "FixtureError", PyExc_ValueError);
  py::register_exception<CapExceeded>(m, "CapExceeded", PyExc_RuntimeError);
  py::register_exception<PacketError>(m, "PacketError", PyExc_RuntimeError);

  m.def("run", &run, py::arg("command"), py::arg("fixture_text"), py::arg("suite") = "", py::arg("jobs") = 1,
        py::arg("nmax") = 0, "Run a CLI command on fixture text; returns the JSON report as a string.");
  m.def("character_degrees", &characterDegrees, py::arg("group"));
  m.def("character_table", &characterTable, py::arg("group"), "Rows as exact cyclotomic strings.");
  m.def("inner_form_orders", &innerFormOrders, py::arg("scheme"));
}
