#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fourcur/approximant.hpp"
#include "fourcur/cur.hpp"
#include "fourcur/errors.hpp"
#include "fourcur/experiment.hpp"
#include "fourcur/testfns.hpp"

namespace py = pybind11;
using namespace fourcur;

namespace {

Quad1D make_rule_named(const std::string& kind, int M) {
  return make_rule(quad_kind_from_string(kind), M);
}

CoeffOracle* oracle_from_callable(const BivariateFn& f, int I1, int I2,
                                  const Quad1D& r1, const Quad1D& r2) {
  return new CoeffOracle(f, I1, I2, r1, r2);
}

CoeffOracle* oracle_from_name(const std::string& name, int I1, int I2,
                              const Quad1D& r1, const Quad1D& r2) {
  return new CoeffOracle(resolve_function(name), I1, I2, r1, r2);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Low-rank CUR approximation of truncated Fourier series";

  py::register_exception<CapacityError>(m, "CapacityError");
  py::register_exception<IoError>(m, "IoError");
  py::register_exception<NumericDomainError>(m, "NumericDomainError");
  py::register_exception<NumericFailure>(m, "NumericFailure");

  py::class_<Quad1D>(m, "Quad1D")
      .def_property_readonly("kind",
                             [](const Quad1D& r) { return std::string(to_string(r.kind)); })
      .def_readonly("nodes", &Quad1D::nodes)
      .def_readonly("weights", &Quad1D::weights)
      .def("__len__", &Quad1D::size);

  m.def("make_rule", &make_rule_named, py::arg("kind"), py::arg("M"),
        "M-point quadrature rule on [-pi, pi]; kind is 'CC', 'GL' or 'NC'");
  m.def(
      "integrate2d",
      [](const Quad1D& r1, const Quad1D& r2, const Integrand2D& g) {
        return integrate2d(r1, r2, g);
      },
      py::arg("r1"), py::arg("r2"), py::arg("g"));

  py::class_<CoeffOracle>(m, "CoeffOracle")
      .def(py::init(&oracle_from_callable), py::arg("f"), py::arg("I1"),
           py::arg("I2"), py::arg("r1"), py::arg("r2"))
      .def(py::init(&oracle_from_name), py::arg("name"), py::arg("I1"),
           py::arg("I2"), py::arg("r1"), py::arg("r2"))
      .def("coeff", &CoeffOracle::coeff, py::arg("k1"), py::arg("k2"))
      .def("column_block", &CoeffOracle::column_block, py::arg("T2"))
      .def("row_block", &CoeffOracle::row_block, py::arg("T1"))
      .def("core_block", &CoeffOracle::core_block, py::arg("T1"), py::arg("T2"))
      .def("full_matrix", &CoeffOracle::full_matrix)
      .def("integral_count", &CoeffOracle::integral_count)
      .def_property_readonly("I1", &CoeffOracle::I1)
      .def_property_readonly("I2", &CoeffOracle::I2);

  m.def("svd", [](const CMatrix& A) {
    const SvdResult s = svd(A);
    return py::make_tuple(s.U, s.S, s.V);
  });
  m.def("pinv", &pinv, py::arg("A"), py::arg("rtol") = -1.0);
  m.def("sigma_min", &sigma_min, py::arg("A"));
  m.def("volume", &volume, py::arg("A"));
  m.def(
      "norm",
      [](const CMatrix& A, const std::string& kind) {
        if (kind == "max") return norm(A, NormKind::Max);
        if (kind == "fro") return norm(A, NormKind::Fro);
        if (kind == "spectral") return norm(A, NormKind::Spectral);
        throw std::invalid_argument("norm kind must be max|fro|spectral");
      },
      py::arg("A"), py::arg("kind"));
  m.def("maxvol_bruteforce", &maxvol_bruteforce, py::arg("A"), py::arg("S1"),
        py::arg("S2"));

  py::class_<RunStats>(m, "RunStats")
      .def_readonly("iterations", &RunStats::iterations)
      .def_readonly("tol_trace", &RunStats::tol_trace)
      .def_readonly("n_integrals", &RunStats::n_integrals)
      .def_readonly("elapsed_seconds", &RunStats::elapsed_seconds)
      .def_property_readonly("stop_reason", [](const RunStats& s) {
        return std::string(to_string(s.stop_reason));
      });

  py::class_<CurModel>(m, "CurModel")
      .def_readonly("T1", &CurModel::T1)
      .def_readonly("T2", &CurModel::T2)
      .def_readonly("C", &CurModel::C)
      .def_readonly("R", &CurModel::R)
      .def_readonly("G", &CurModel::G)
      .def_readonly("U", &CurModel::U)
      .def_readonly("stats", &CurModel::stats)
      .def_property_readonly("S1", &CurModel::S1)
      .def_property_readonly("S2", &CurModel::S2);

  m.def(
      "estimate_orders",
      [](int alpha, double eps, double C_const, double seminorm) {
        const OrderEstimate est = estimate_orders(alpha, eps, C_const, seminorm);
        return py::make_tuple(est.I1, est.I2);
      },
      py::arg("alpha"), py::arg("eps"), py::arg("C_const") = 1.0,
      py::arg("seminorm") = 1.0);
  m.def("index_band", &index_band, py::arg("k"), py::arg("b"));
  m.def(
      "cur_fixed",
      [](CoeffOracle& o, const IndexSet& T1, const IndexSet& T2,
         const std::string& mode) {
        return cur_fixed(o, T1, T2, cur_mode_from_string(mode));
      },
      py::arg("oracle"), py::arg("T1"), py::arg("T2"), py::arg("mode") = "cross");
  m.def("algorithm1", &algorithm1, py::arg("oracle"), py::arg("b1"),
        py::arg("b2"), py::arg("tau"), py::arg("K"));
  m.def("algorithm2", &algorithm2, py::arg("oracle"), py::arg("b1"),
        py::arg("b2"), py::arg("tau"), py::arg("K"));
  m.def("algorithm_c1", &algorithm_c1, py::arg("oracle"), py::arg("b1"),
        py::arg("b2"), py::arg("tau"), py::arg("K"));

  py::class_<EvalGrid>(m, "EvalGrid")
      .def(py::init([](std::vector<double> x1s, std::vector<double> x2s) {
             return EvalGrid{std::move(x1s), std::move(x2s)};
           }),
           py::arg("x1s"), py::arg("x2s"))
      .def_readonly("x1s", &EvalGrid::x1s)
      .def_readonly("x2s", &EvalGrid::x2s);
  m.def("linspace_grid", &linspace_grid, py::arg("n"));
  m.def("eval_truncated", &eval_truncated, py::arg("A"), py::arg("I1"),
        py::arg("I2"), py::arg("grid"));
  m.def("eval_cur", &eval_cur, py::arg("model"), py::arg("grid"));
  m.def("l2_gap", &l2_gap, py::arg("A"), py::arg("model"));

  m.def("test_function", &test_function, py::arg("name"), py::arg("x1"),
        py::arg("x2"));
  m.def("registered_functions", &registered_functions);
}
