#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "solitonlab/cli.hpp"
#include "solitonlab/error.hpp"
#include "solitonlab/geometry.hpp"
#include "solitonlab/manifold_file.hpp"
#include "solitonlab/pipeline.hpp"
#include "solitonlab/zoo.hpp"

namespace py = pybind11;
using namespace solitonlab;

namespace {

py::array_t<double> to_array(const TensorValue& t) {
  std::vector<py::ssize_t> shape(static_cast<std::size_t>(t.rank()), t.dim());
  py::array_t<double> a(shape);
  std::copy(t.data().begin(), t.data().end(), a.mutable_data());
  return a;
}

Point to_point(const ManifoldSpec& spec, const std::vector<double>& coords) {
  if (static_cast<int>(coords.size()) != spec.dim())
    throw Error("point has " + std::to_string(coords.size()) + " coordinates, manifold has " +
                std::to_string(spec.dim()));
  return Point{coords};
}

RunOptions options(int samples, std::uint64_t seed, std::optional<double> lambda, bool fit,
                   const std::string& potential, const std::string& potential_fn, const std::string& theorem = "") {
  RunOptions o;
  o.samples = samples;
  o.seed = seed;
  o.lambda = lambda;
  o.fit = fit;
  o.potential = potential;
  o.potential_fn = potential_fn;
  o.theorem = theorem;
  return o;
}

}  // namespace

PYBIND11_MODULE(_solitonlab, m) {
  m.doc() = "Riemann soliton and almost Kenmotsu structure checks";

  // Translators are tried in reverse order of registration, so the base
  // class goes first.
  const auto base = py::register_exception<Error>(m, "SolitonlabError", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", base.ptr());

  py::class_<ManifoldSpec>(m, "Manifold")
      .def_static("load", [](const std::string& path) { return load_manifold(path); }, py::arg("path"))
      .def_static("parse", [](const std::string& text) { return parse_manifold(text, "<string>"); },
                  py::arg("text"))
      .def_static("zoo", [](const std::string& name) { return zoo_entry(name).spec; }, py::arg("name"))
      .def_property_readonly("name", [](const ManifoldSpec& s) { return s.name; })
      .def_property_readonly("dim", &ManifoldSpec::dim)
      .def_property_readonly("coordinates", [](const ManifoldSpec& s) { return s.coordinates; })
      .def_property_readonly("declared_lambda", [](const ManifoldSpec& s) { return s.declared_lambda; })
      .def_property_readonly("has_structure", [](const ManifoldSpec& s) { return s.structure.has_value(); })
      .def("to_text", &write_manifold)
      .def("sample_points",
           [](const ManifoldSpec& s, int count, std::uint64_t seed) {
             const auto pts = sample_points(s, count, seed);
             py::array_t<double> a({static_cast<py::ssize_t>(pts.size()), static_cast<py::ssize_t>(s.dim())});
             auto r = a.mutable_unchecked<2>();
             for (std::size_t i = 0; i < pts.size(); ++i)
               for (int j = 0; j < s.dim(); ++j) r(static_cast<py::ssize_t>(i), j) = pts[i].coords[static_cast<std::size_t>(j)];
             return a;
           },
           py::arg("count"), py::arg("seed") = kDefaultSeed)
      .def("metric", [](const ManifoldSpec& s, const std::vector<double>& p) {
        return to_array(Geometry(s, to_point(s, p)).metric_value());
      }, py::arg("point"))
      .def("christoffel", [](const ManifoldSpec& s, const std::vector<double>& p) {
        return to_array(value_of(Geometry(s, to_point(s, p)).christoffel()));
      }, py::arg("point"), "Gamma[k, i, j] = Gamma^k_ij")
      .def("riemann", [](const ManifoldSpec& s, const std::vector<double>& p) {
        return to_array(value_of(Geometry(s, to_point(s, p)).riemann()));
      }, py::arg("point"), "R[a, b, c, d] = R^a_bcd with R(d_c, d_d) d_b = R^a_bcd d_a")
      .def("riemann_04", [](const ManifoldSpec& s, const std::vector<double>& p) {
        return to_array(value_of(Geometry(s, to_point(s, p)).riemann_04()));
      }, py::arg("point"), "R4(X,Y,Z,W) = g(R(X,Y)W, Z)")
      .def("ricci", [](const ManifoldSpec& s, const std::vector<double>& p) {
        return to_array(value_of(Geometry(s, to_point(s, p)).ricci()));
      }, py::arg("point"))
      .def("scalar_curvature", [](const ManifoldSpec& s, const std::vector<double>& p) {
        return Geometry(s, to_point(s, p)).scalar_curvature().value();
      }, py::arg("point"));

  m.def("zoo_names", &zoo_names);

  // Pipeline entry points return the report as JSON text; the Python package
  // decodes it.
  m.def("run_structure", [](const ManifoldSpec& s, int samples, std::uint64_t seed) {
    return run_structure(s, options(samples, seed, {}, false, "", "")).to_json_text();
  }, py::arg("manifold"), py::arg("samples") = 100, py::arg("seed") = kDefaultSeed);
  m.def("run_soliton", [](const ManifoldSpec& s, std::optional<double> lambda, bool fit, const std::string& potential,
                          const std::string& potential_fn, int samples, std::uint64_t seed) {
    return run_soliton(s, options(samples, seed, lambda, fit, potential, potential_fn)).to_json_text();
  }, py::arg("manifold"), py::arg("lambda_") = py::none(), py::arg("fit") = false, py::arg("potential") = "",
        py::arg("potential_fn") = "", py::arg("samples") = 100, py::arg("seed") = kDefaultSeed);
  m.def("run_audit", [](const ManifoldSpec& s, const std::string& theorem, std::optional<double> lambda, bool fit,
                        const std::string& potential, const std::string& potential_fn, int samples,
                        std::uint64_t seed) {
    return run_audit(s, options(samples, seed, lambda, fit, potential, potential_fn, theorem)).to_json_text();
  }, py::arg("manifold"), py::arg("theorem"), py::arg("lambda_") = py::none(), py::arg("fit") = false,
        py::arg("potential") = "", py::arg("potential_fn") = "", py::arg("samples") = 100,
        py::arg("seed") = kDefaultSeed);
  m.def("run_report", [](const ManifoldSpec& s, int samples, std::uint64_t seed) {
    return run_report(s, options(samples, seed, {}, false, "", "")).to_json_text();
  }, py::arg("manifold"), py::arg("samples") = 100, py::arg("seed") = kDefaultSeed);
  m.def("run_zoo", [](const std::string& name, int samples, std::uint64_t seed) {
    return run_zoo(zoo_entry(name), options(samples, seed, {}, false, "", "")).to_json_text();
  }, py::arg("name"), py::arg("samples") = 100, py::arg("seed") = kDefaultSeed);

  m.def("cli", [](const std::vector<std::string>& args) {
    std::vector<std::string> argv{"solitonlab"};
    argv.insert(argv.end(), args.begin(), args.end());
    std::ostringstream out, err;
    const int code = run_cli(argv, out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"), "Runs the command line in-process; returns (exit_code, stdout, stderr).");
}
