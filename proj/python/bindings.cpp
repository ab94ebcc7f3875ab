#include "toricgk/commands.hpp"
#include "toricgk/error.hpp"
#include "toricgk/gk_builder.hpp"
#include "toricgk/linalg_corpus.hpp"
#include "toricgk/oracles.hpp"
#include "toricgk/poisson.hpp"
#include "toricgk/polytope.hpp"
#include "toricgk/potential.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace toricgk;

namespace {

py::dict structures_dict(const FramePointStructures& s) {
  py::dict d;
  d["x"] = s.x;
  d["frame"] = to_string(s.frame);
  d["phi_s"] = s.phi_s;
  d["phi"] = s.phi;
  d["Xi"] = s.Xi;
  d["Jplus"] = s.Jplus;
  d["Jminus"] = s.Jminus;
  d["I0"] = s.I0;
  d["Iplus"] = s.Iplus;
  d["Iminus"] = s.Iminus;
  d["J0"] = s.J0;
  d["g"] = s.g;
  d["b"] = s.b;
  d["beta1"] = s.beta1;
  d["beta3"] = s.beta3;
  d["Omega"] = s.Omega;
  return d;
}

py::list report_list(const ValidationReport& r) {
  py::list out;
  for (const auto& c : r.checks()) {
    py::dict d;
    d["name"] = c.name;
    d["pass"] = c.pass;
    d["residual"] = c.residual;
    d["location"] = c.location;
    d["detail"] = c.detail;
    out.append(d);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_toricgk, m) {
  static py::exception<Error> error(m, "Error");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetString(error.ptr(), (std::string(to_string(e.code())) + ": " + e.what()).c_str());
    }
  });

  py::class_<DelzantPolytope>(m, "DelzantPolytope")
      .def(py::init([](int dim, const std::vector<std::pair<std::vector<int>, double>>& facets) {
             std::vector<Facet> fs;
             for (const auto& [u, lam] : facets) {
               Facet f;
               f.normal = Eigen::Map<const Eigen::VectorXi>(u.data(), static_cast<Eigen::Index>(u.size()));
               f.offset = lam;
               fs.push_back(f);
             }
             return DelzantPolytope(dim, fs);
           }),
           py::arg("dim"), py::arg("facets"))
      .def_static("square_half", &DelzantPolytope::square_half)
      .def_static("segment", &DelzantPolytope::segment)
      .def_property_readonly("dim", &DelzantPolytope::dim)
      .def_property_readonly("num_facets", &DelzantPolytope::num_facets)
      .def("vertices", [](const DelzantPolytope& p) {
        std::vector<Vec> out;
        for (const auto& v : p.vertices()) out.push_back(v.point);
        return out;
      })
      .def("strictly_inside", &DelzantPolytope::strictly_inside);

  m.def("sample_interior", [](const DelzantPolytope& p, int res, double margin) {
    return sample_interior(p, res, margin).points;
  });
  m.def("guillemin_tau", &guillemin_tau);
  m.def("canonical_hessian", [](const DelzantPolytope& p, const Vec& x) {
    return PotentialModel::canonical(p).hessian_matrix(x);
  });
  m.def(
      "build_structures",
      [](const Mat& phi_s, const Mat& C, const Mat& F, const std::string& frame) {
        return structures_dict(build_structures(phi_s, C, F, frame_from_string(frame)));
      },
      py::arg("phi_s"), py::arg("C"), py::arg("F"), py::arg("frame") = "zeta_dmu");
  m.def("check_identities", [](const Mat& phi_s, const Mat& C, const Mat& F, double tol) {
    return report_list(check_identities(build_structures(phi_s, C, F), tol));
  }, py::arg("phi_s"), py::arg("C"), py::arg("F"), py::arg("tol") = 1e-10);
  m.def("oracle_tensors", [](double c, double f, const Vec& mu) {
    auto t = oracle_tensors(c, f, mu);
    py::dict d;
    d["g"] = t.g;
    d["b"] = t.b;
    d["det_phi"] = t.det_phi;
    d["p"] = t.p;
    if (t.Q) d["Q"] = *t.Q;
    if (t.bprime) d["bprime"] = *t.bprime;
    return d;
  });
  m.def("f_admissibility_interval", [](int res) {
    auto r = f_admissibility_interval(res);
    py::dict d;
    d["lower"] = r.lower;
    d["upper"] = r.upper;
    d["max_inv_det"] = r.max_inv_det;
    d["argmax"] = r.argmax;
    d["formula_upper"] = r.formula_upper;
    return d;
  });
  m.def("symmetric_spinor_identity", [](double f, std::complex<double> z1, std::complex<double> z2) {
    return symmetric_spinor_identity(f, Eigen::Vector2cd(z1, z2));
  });
  m.def("matrix_fact_suite", [](std::uint64_t seed) { return report_list(run_matrix_fact_suite(seed)); },
        py::arg("seed") = 0);
  m.def(
      "run_command",
      [](const std::string& command, const std::optional<std::string>& config_text, double c, double f,
         std::optional<int> grid, std::optional<std::uint64_t> seed) {
        CommandOptions o;
        o.command = command;
        o.config_text = config_text;
        o.c = c;
        o.f = f;
        o.grid = grid;
        o.seed = seed;
        auto r = execute(o);
        py::dict d;
        d["status"] = r.status;
        d["report"] = r.report.to_text();
        d["checks"] = report_list(r.report);
        d["artifact"] = r.artifact;
        return d;
      },
      py::arg("command"), py::arg("config_text") = py::none(), py::arg("c") = 0.0, py::arg("f") = 0.0,
      py::arg("grid") = py::none(), py::arg("seed") = py::none());
}
