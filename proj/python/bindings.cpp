#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qroof/bipartite.hpp"
#include "qroof/channel.hpp"
#include "qroof/error.hpp"
#include "qroof/minkowski.hpp"
#include "qroof/oracle.hpp"
#include "qroof/roof.hpp"

namespace py = pybind11;
using namespace qroof;

namespace {

FourVector as_four_vector(const Eigen::Vector4d& v) { return FourVector::from_coeffs(v); }

}  // namespace

PYBIND11_MODULE(_qroof, m) {
  m.doc() = "Concurrence of stochastic 1-qubit maps via the Minkowski quadratic-form roof";

  static py::exception<Error> error(m, "Error", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  py::enum_<CausalClass>(m, "CausalClass")
      .value("TimeLike", CausalClass::TimeLike)
      .value("LightLike", CausalClass::LightLike)
      .value("SpaceLike", CausalClass::SpaceLike);

  py::class_<FourVector>(m, "FourVector")
      .def(py::init<double, double, double, double>(), py::arg("x0"), py::arg("x1"), py::arg("x2"), py::arg("x3"))
      .def(py::init(&as_four_vector), py::arg("coeffs"))
      .def_static("state", &FourVector::state, py::arg("bloch"))
      .def_readwrite("x0", &FourVector::x0)
      .def_readwrite("x", &FourVector::x)
      .def("coeffs", &FourVector::coeffs)
      .def("__repr__", [](const FourVector& v) {
        return "FourVector(" + std::to_string(v.x0) + ", " + std::to_string(v.x(0)) + ", " + std::to_string(v.x(1)) +
               ", " + std::to_string(v.x(2)) + ")";
      });
  py::implicitly_convertible<Eigen::Vector4d, FourVector>();

  m.def("minkowski_dot", &minkowski_dot);
  m.def("causal_class", &causal_class, py::arg("v"), py::arg("tolerance") = kDefaultCausalTolerance);

  py::class_<AffineMap>(m, "AffineMap")
      .def(py::init<>())
      .def(py::init([](const Eigen::Matrix3d& lambda, const Eigen::Vector3d& t) { return AffineMap{lambda, t}; }),
           py::arg("lambda_"), py::arg("t"))
      .def_readwrite("lambda_", &AffineMap::lambda)
      .def_readwrite("t", &AffineMap::t)
      .def("matrix", &AffineMap::matrix);

  py::class_<CanonicalParams>(m, "CanonicalParams")
      .def(py::init<>())
      .def(py::init([](double alpha, double beta, const Eigen::Vector3d& omega, const Eigen::Vector3d& xi) {
             return CanonicalParams{alpha, beta, omega, xi};
           }),
           py::arg("alpha"), py::arg("beta"), py::arg("omega"), py::arg("xi"))
      .def_readwrite("alpha", &CanonicalParams::alpha)
      .def_readwrite("beta", &CanonicalParams::beta)
      .def_readwrite("omega", &CanonicalParams::omega)
      .def_readwrite("xi", &CanonicalParams::xi)
      .def_property_readonly("nu", &CanonicalParams::nu);

  m.def("apply", &apply);
  m.def("from_canonical", &from_canonical);
  m.def("is_positive", &is_positive, py::arg("phi"), py::arg("tolerance") = kPositivityTolerance);
  m.def("is_completely_positive", &is_completely_positive, py::arg("phi"),
        py::arg("tolerance") = kCompletePositivityTolerance);
  m.def("choi_matrix", &choi_matrix);
  m.def("identity_map", &identity_map);
  m.def("unital", &unital, py::arg("lambda_"));
  m.def("axial", &axial, py::arg("alpha"), py::arg("beta"), py::arg("gamma"));
  m.def("amplitude_damping", &amplitude_damping, py::arg("alpha"));
  m.def("phase_damping", &phase_damping, py::arg("beta"));
  m.def("depolarizing", &depolarizing, py::arg("alpha"));

  py::class_<RoofOptions>(m, "RoofOptions")
      .def(py::init<>())
      .def_readwrite("tol_psd", &RoofOptions::tol_psd)
      .def_readwrite("tol_causal", &RoofOptions::tol_causal)
      .def_readwrite("check_positivity", &RoofOptions::check_positivity);

  py::class_<RoofSolution>(m, "RoofSolution")
      .def_readonly("w0", &RoofSolution::w0)
      .def_property_readonly("psd_interval",
                             [](const RoofSolution& s) { return py::make_tuple(s.psd_interval.lower, s.psd_interval.upper); })
      .def_readonly("kernel_basis", &RoofSolution::kernel_basis)
      .def_readonly("flat", &RoofSolution::flat)
      .def_readonly("n", &RoofSolution::n)
      .def_readonly("q", &RoofSolution::q)
      .def_readonly("degenerate", &RoofSolution::degenerate)
      .def_readonly("used_fallback", &RoofSolution::used_fallback);

  m.def("build_q", [](const AffineMap& phi, double w) { return build_q(phi, w).q; }, py::arg("phi"), py::arg("w"));
  m.def("pencil_eigenvalues", &pencil_eigenvalues);
  m.def("solve_w0", &solve_w0, py::arg("phi"), py::arg("options") = RoofOptions{});
  m.def("concurrence", py::overload_cast<const AffineMap&, const FourVector&, const RoofOptions&>(&concurrence),
        py::arg("phi"), py::arg("state"), py::arg("options") = RoofOptions{});
  m.def("unital_concurrence_closed_form", &unital_concurrence_closed_form);

  py::class_<AxialClosedForm>(m, "AxialClosedForm")
      .def_readonly("w0", &AxialClosedForm::w0)
      .def_readonly("flat", &AxialClosedForm::flat)
      .def_readonly("beta_c_squared", &AxialClosedForm::beta_c_squared)
      .def_readonly("z0", &AxialClosedForm::z0);
  m.def("axial_w0_closed_form", &axial_w0_closed_form, py::arg("alpha"), py::arg("beta"), py::arg("gamma"));

  py::class_<Decomposition::Component>(m, "DecompositionComponent")
      .def_readonly("weight", &Decomposition::Component::weight)
      .def_readonly("pure", &Decomposition::Component::pure);
  py::class_<Decomposition>(m, "Decomposition")
      .def_readonly("components", &Decomposition::components)
      .def_readonly("degenerate_leaf", &Decomposition::degenerate_leaf)
      .def("reconstruct", &Decomposition::reconstruct);
  m.def("optimal_decomposition",
        py::overload_cast<const AffineMap&, const FourVector&, const RoofOptions&>(&optimal_decomposition),
        py::arg("phi"), py::arg("state"), py::arg("options") = RoofOptions{});

  py::class_<BipartiteState>(m, "BipartiteState")
      .def_static("from_matrix", &BipartiteState::from_matrix, py::arg("n"), py::arg("matrix"))
      .def_static("from_mixture", &BipartiteState::from_mixture, py::arg("n"), py::arg("mixture"))
      .def_property_readonly("n", &BipartiteState::n)
      .def_property_readonly("rank", &BipartiteState::rank)
      .def_property_readonly("matrix", &BipartiteState::matrix);

  py::class_<InducedMap>(m, "InducedMap")
      .def_readonly("basis", &InducedMap::basis)
      .def_readonly("map", &InducedMap::map)
      .def_readonly("coefficients", &InducedMap::coefficients)
      .def_property_readonly("d", [](const InducedMap& im) {
        return py::make_tuple(py::make_tuple(im.d[0][0], im.d[0][1]), py::make_tuple(im.d[1][0], im.d[1][1]));
      });
  m.def("induced_map", &induced_map);
  m.def("concurrence_2xn", &concurrence_2xn, py::arg("state"), py::arg("options") = RoofOptions{});
  m.def("wootters_concurrence", &wootters_concurrence);
  m.def("eof_from_concurrence", &eof_from_concurrence);

  py::class_<EofBound>(m, "EofBound")
      .def_readonly("value", &EofBound::value)
      .def_readonly("exact", &EofBound::exact)
      .def_readonly("concurrence", &EofBound::concurrence);
  m.def("eof_bound", &eof_bound, py::arg("state"), py::arg("options") = RoofOptions{});

  py::class_<OracleConfig>(m, "OracleConfig")
      .def(py::init<>())
      .def_readwrite("grid_resolution", &OracleConfig::grid_resolution)
      .def_readwrite("refine_iterations", &OracleConfig::refine_iterations)
      .def_readwrite("n_points", &OracleConfig::n_points)
      .def_readwrite("restarts", &OracleConfig::restarts)
      .def_readwrite("seed", &OracleConfig::seed);

  py::class_<SufficiencyReport>(m, "SufficiencyReport")
      .def_readonly("min2", &SufficiencyReport::min2)
      .def_readonly("min3", &SufficiencyReport::min3)
      .def_readonly("min4", &SufficiencyReport::min4)
      .def_readonly("sufficient", &SufficiencyReport::sufficient);
  m.def("brute_force_concurrence", &brute_force_concurrence, py::arg("phi"), py::arg("state"),
        py::arg("config") = OracleConfig{});
  m.def("two_point_sufficiency", &two_point_sufficiency, py::arg("phi"), py::arg("state"),
        py::arg("config") = OracleConfig{});
}
