#include <sstream>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "contactred/error.hpp"
#include "contactred/verify.hpp"

namespace py = pybind11;
using namespace contactred;

namespace {

RunConfig make_config(std::vector<std::string> names, std::optional<int> n, int samples, double tol,
                      std::uint64_t seed, std::string out, bool quiet) {
  RunConfig c;
  c.scenarios = std::move(names);
  c.n = n;
  c.samples = samples;
  c.tol = tol;
  c.seed = seed;
  c.out = std::move(out);
  c.quiet = quiet;
  return c;
}

ReductionScenario scenario(const std::string& name, std::optional<int> n) {
  return n ? make_scenario(name, *n) : make_scenario(name);
}

}  // namespace

PYBIND11_MODULE(_contactred, m) {
  m.doc() = "Contact reduction of cosphere bundles: geometry kernels and the verification suite.";

  py::register_exception<GeometryError>(m, "GeometryError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::class_<ManifoldSpec>(m, "ManifoldSpec")
      .def_static("euclidean", &ManifoldSpec::euclidean, py::arg("n"))
      .def_static("sphere", &ManifoldSpec::sphere, py::arg("n"))
      .def_static("torus", &ManifoldSpec::torus, py::arg("n"))
      .def_static("product", &ManifoldSpec::product, py::arg("factors"))
      .def_static("cotangent_bundle", &ManifoldSpec::cotangent_bundle, py::arg("base"))
      .def_static("cosphere_bundle", &ManifoldSpec::cosphere_bundle, py::arg("base"))
      .def_property_readonly("ambient_dim", &ManifoldSpec::ambient_dim)
      .def_property_readonly("intrinsic_dim", &ManifoldSpec::intrinsic_dim)
      .def_property_readonly("name", &ManifoldSpec::name)
      .def("__repr__", [](const ManifoldSpec& s) { return "<ManifoldSpec " + s.name() + ">"; });

  m.def("constraint_residual", &constraint_residual, py::arg("m"), py::arg("y"));
  m.def(
      "project_tangent", [](const ManifoldSpec& s, const Vec& q, const Vec& w) { return project_tangent(s, {q}, w).dir; },
      py::arg("m"), py::arg("q"), py::arg("w"));
  m.def(
      "retract", [](const ManifoldSpec& s, const Vec& q, const Vec& u) { return retract(s, {q}, {{q}, u}).coords; },
      py::arg("m"), py::arg("q"), py::arg("u"));
  m.def(
      "sample_point", [](const ManifoldSpec& s, std::uint64_t seed) { return sample_point(s, seed).coords; },
      py::arg("m"), py::arg("seed"));
  m.def("tangent_frame", &tangent_frame, py::arg("m"), py::arg("y"));
  m.def(
      "f_sigma", [](const Vec& p, double scale) { return SectionSigma::scaled(scale).f(p); }, py::arg("p"),
      py::arg("scale") = 1.0);
  m.def(
      "liouville", [](const ManifoldSpec& q, const Vec& x, const Vec& p, const Vec& v) {
        return liouville_eval(q, make_cotangent_point(q, x, p), v);
      },
      py::arg("q"), py::arg("x"), py::arg("p"), py::arg("v"));

  py::class_<GroupActionSpec>(m, "GroupActionSpec")
      .def_static("torus_rotation", &GroupActionSpec::torus_rotation, py::arg("ambient_dim"), py::arg("circle_offsets"))
      .def_static("translations", &GroupActionSpec::translations, py::arg("generators"))
      .def_static("discrete_lattice", &GroupActionSpec::discrete_lattice, py::arg("generators"))
      .def_static("circle_on_s3", &GroupActionSpec::circle_on_s3)
      .def_property_readonly("algebra_dim", &GroupActionSpec::algebra_dim)
      .def_property_readonly("ambient_dim", &GroupActionSpec::ambient_dim)
      .def_property_readonly("name", &GroupActionSpec::name)
      .def(
          "act", [](const GroupActionSpec& a, const Vec& g, const Vec& x) { return a.act(GroupElement{g}, x); },
          py::arg("g"), py::arg("x"));

  m.def(
      "fundamental_field", [](const GroupActionSpec& a, const Vec& xi, const Vec& x) { return fundamental_field(a, xi, x); },
      py::arg("a"), py::arg("xi"), py::arg("x"));
  m.def(
      "J_ct", [](const GroupActionSpec& a, const ManifoldSpec& q, const Vec& x, const Vec& p) {
        return J_ct(a, make_cotangent_point(q, x, p));
      },
      py::arg("a"), py::arg("q"), py::arg("x"), py::arg("p"));

  py::class_<ReductionScenario>(m, "Scenario")
      .def_readonly("name", &ReductionScenario::name)
      .def_readonly("n", &ReductionScenario::n)
      .def_readonly("q", &ReductionScenario::q)
      .def_readonly("action", &ReductionScenario::action)
      .def_readonly("mu", &ReductionScenario::mu)
      .def_readonly("quotient", &ReductionScenario::quotient)
      .def_readonly("expected_reduced_dim", &ReductionScenario::expected_reduced_dim)
      .def("__repr__", [](const ReductionScenario& s) {
        std::ostringstream os;
        os << "<Scenario " << s.name << " n=" << s.n << ">";
        return os.str();
      });

  m.def("scenario_names", &scenario_names);
  m.def("default_size", &default_size, py::arg("name"));
  m.def("size_range", &size_range, py::arg("name"));
  m.def("make_scenario", &scenario, py::arg("name"), py::arg("n") = py::none());

  m.def(
      "kernel_algebra", [](const ReductionScenario& s) {
        const KernelAlgebra k = kernel_algebra(s.action, s.mu);
        return py::make_tuple(k.basis, k.condition);
      },
      py::arg("scenario"), "Orthonormal basis of ker mu and the dimension condition.");
  m.def(
      "sample_level", [](const ReductionScenario& s, int count, std::uint64_t seed) {
        Rng rng(seed);
        std::vector<Vec> out;
        for (const CospherePoint& pt : sample_level(s, count, rng)) out.push_back(pt.coords());
        return out;
      },
      py::arg("scenario"), py::arg("count"), py::arg("seed") = 42);
  m.def(
      "reduce", [](const ReductionScenario& s, const Vec& y) {
        const CospherePoint pt = cosphere_point_from_coords(s.q, y);
        return (s.zero_momentum() ? phi0_reduced(s, pt) : psi_mu_reduced(s, pt)).coords();
      },
      py::arg("scenario"), py::arg("y"), "Image of a level-set point in the reduced cosphere bundle.");
  m.def(
      "reduction_factor", [](const ReductionScenario& s, const Vec& y) { return reduction_factor(s, y); },
      py::arg("scenario"), py::arg("y"));
  m.def(
      "dimension_audit", [](const ReductionScenario& s, int count, std::uint64_t seed) {
        Rng rng(seed);
        const DimensionAudit d = dimension_audit(s, sample_level(s, count, rng));
        py::dict out;
        out["level_dim"] = d.level_dim;
        out["orbit_dim"] = d.orbit_dim;
        out["reduced_dim"] = d.reduced_dim;
        out["expected_reduced_dim"] = d.expected_reduced_dim;
        out["stable"] = d.stable;
        return out;
      },
      py::arg("scenario"), py::arg("count") = 16, py::arg("seed") = 42);

  m.def(
      "report_json",
      [](std::vector<std::string> names, std::optional<int> n, int samples, double tol, std::uint64_t seed) {
        const RunConfig c = make_config(std::move(names), n, samples, tol, seed, "", true);
        py::gil_scoped_release release;
        return to_json(run_suite(c));
      },
      py::arg("names"), py::arg("n") = py::none(), py::arg("samples") = 64, py::arg("tol") = 1e-9,
      py::arg("seed") = 42, "Runs the suite and returns the JSON report. Raises ConfigError on bad input.");
  m.def(
      "run_verify",
      [](std::vector<std::string> names, std::optional<int> n, int samples, double tol, std::uint64_t seed,
         std::string out, bool quiet) {
        const RunConfig c = make_config(std::move(names), n, samples, tol, seed, std::move(out), quiet);
        std::ostringstream log;
        int code;
        {
          py::gil_scoped_release release;
          code = run_verify(c, log);
        }
        return py::make_tuple(code, log.str());
      },
      py::arg("names"), py::arg("n") = py::none(), py::arg("samples") = 64, py::arg("tol") = 1e-9,
      py::arg("seed") = 42, py::arg("out") = "", py::arg("quiet") = false,
      "Same contract as the command-line verify: returns (exit_code, log).");
}
