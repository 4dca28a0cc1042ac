#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fracplap/errors.hpp"
#include "fracplap/exponent_field.hpp"
#include "fracplap/grid.hpp"
#include "fracplap/nonlocal_problem.hpp"
#include "fracplap/regularity.hpp"
#include "fracplap/solver.hpp"
#include "fracplap/vexp_spaces.hpp"

namespace py = pybind11;
using namespace fracplap;

namespace {

Point as_point(const std::vector<double>& v) {
  if (v.empty() || v.size() > 2) throw ArgumentError("points have one or two coordinates", "point");
  return {v[0], v.size() > 1 ? v[1] : 0.0};
}

std::vector<std::size_t> region_or_interior(const Grid& grid,
                                            const std::optional<std::vector<std::size_t>>& r) {
  if (r) return *r;
  auto in = grid.interior();
  return {in.begin(), in.end()};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Variable-exponent fractional p-Laplacian toolkit";

  py::register_exception<Error>(m, "Error", PyExc_ValueError);

  py::class_<GridSpec>(m, "GridSpec")
      .def(py::init([](int dim, std::vector<double> center, std::vector<double> half_width,
                       double r_trunc, int nodes) {
             GridSpec s;
             s.dim = dim;
             s.center = as_point(center);
             s.half_width = as_point(half_width);
             if (half_width.size() == 1) s.half_width[1] = half_width[0];
             s.r_trunc = r_trunc;
             s.nodes = nodes;
             return s;
           }),
           py::arg("dim") = 1, py::arg("center") = std::vector<double>{0.0},
           py::arg("half_width") = std::vector<double>{1.0}, py::arg("r_trunc") = 4.0,
           py::arg("nodes") = 65)
      .def_readwrite("dim", &GridSpec::dim)
      .def_readwrite("r_trunc", &GridSpec::r_trunc)
      .def_readwrite("nodes", &GridSpec::nodes);

  py::class_<Grid>(m, "Grid")
      .def(py::init(&Grid::build), py::arg("spec"))
      .def_property_readonly("dim", &Grid::dim)
      .def_property_readonly("size", &Grid::size)
      .def_property_readonly("cell_measure", &Grid::cell_measure)
      .def_property_readonly("horizon", &Grid::horizon)
      .def_property_readonly("interior",
                             [](const Grid& g) {
                               auto s = g.interior();
                               return std::vector<std::size_t>(s.begin(), s.end());
                             })
      .def_property_readonly("exterior",
                             [](const Grid& g) {
                               auto s = g.exterior();
                               return std::vector<std::size_t>(s.begin(), s.end());
                             })
      .def("node",
           [](const Grid& g, std::size_t i) {
             const Point& p = g.node(i);
             return g.dim() == 1 ? std::vector<double>{p[0]} : std::vector<double>{p[0], p[1]};
           })
      .def("coordinates", [](const Grid& g, int axis) {
        std::vector<double> out;
        for (const Point& p : g.nodes()) out.push_back(p[axis]);
        return out;
      }, py::arg("axis") = 0)
      .def("omega_measure", &Grid::omega_measure);

  py::class_<ExponentField>(m, "ExponentField")
      .def_static("constant", &ExponentField::constant, py::arg("p"))
      .def_static("remark_i", &ExponentField::remark_i)
      .def_static("remark_ii", &ExponentField::remark_ii)
      .def_static("affine", &ExponentField::affine, py::arg("base"), py::arg("slope"),
                  py::arg("p_min"), py::arg("p_max"))
      .def_static("from_csv", &ExponentField::from_csv, py::arg("path"))
      .def("__call__", [](const ExponentField& f, std::vector<double> x,
                          std::vector<double> y) { return f(as_point(x), as_point(y)); })
      .def_property_readonly("name", &ExponentField::name)
      .def_property_readonly("p_min", &ExponentField::p_min)
      .def_property_readonly("p_max", &ExponentField::p_max);

  py::class_<TailResult>(m, "TailResult")
      .def_readonly("value", &TailResult::value)
      .def_readonly("remainder", &TailResult::remainder)
      .def_readonly("r_outer", &TailResult::r_outer);

  py::enum_<TailSign>(m, "TailSign")
      .value("plus", TailSign::plus)
      .value("minus", TailSign::minus)
      .value("abs", TailSign::abs);

  py::class_<NonlocalProblem>(m, "NonlocalProblem")
      .def(py::init<Grid, ExponentField, double>(), py::arg("grid"), py::arg("field"),
           py::arg("s"))
      .def_property_readonly("grid", &NonlocalProblem::grid, py::return_value_policy::reference_internal)
      .def_property_readonly("s", &NonlocalProblem::s)
      .def("energy", &NonlocalProblem::energy)
      .def("gradient", &NonlocalProblem::gradient)
      .def("residual_norm", &NonlocalProblem::residual_norm)
      .def("tail",
           [](const NonlocalProblem& p, const GridFunction& u, std::vector<double> x0, double R,
              TailSign sign) { return p.tail(u, as_point(x0), R, sign); },
           py::arg("u"), py::arg("x0"), py::arg("R"), py::arg("sign") = TailSign::abs);

  py::class_<SolveResult>(m, "SolveResult")
      .def_readonly("u", &SolveResult::u)
      .def_readonly("iterations", &SolveResult::iterations)
      .def_readonly("final_residual", &SolveResult::final_residual)
      .def_readonly("energy_history", &SolveResult::energy_history)
      .def_readonly("converged", &SolveResult::converged);

  m.def("minimize",
        [](const NonlocalProblem& p, const GridFunction& g, double grad_tol, int max_iter) {
          SolveOptions o;
          o.grad_tol = grad_tol;
          o.max_iter = max_iter;
          return minimize(p, g, o);
        },
        py::arg("problem"), py::arg("g"), py::arg("grad_tol") = 1e-10,
        py::arg("max_iter") = 20000);

  py::class_<NormResult>(m, "NormResult")
      .def_readonly("value", &NormResult::value)
      .def_readonly("lo", &NormResult::lo)
      .def_readonly("hi", &NormResult::hi)
      .def_readonly("iterations", &NormResult::iterations);

  m.def("lebesgue_modular",
        [](const GridFunction& u, const ExponentField& f, const Grid& g,
           std::optional<std::vector<std::size_t>> region) {
          const auto r = region_or_interior(g, region);
          return lebesgue_modular(u, f, g, r).value;
        },
        py::arg("u"), py::arg("field"), py::arg("grid"), py::arg("region") = py::none());
  m.def("lebesgue_norm",
        [](const GridFunction& u, const ExponentField& f, const Grid& g,
           std::optional<std::vector<std::size_t>> region, double tol) {
          const auto r = region_or_interior(g, region);
          return lebesgue_norm(u, f, g, r, tol);
        },
        py::arg("u"), py::arg("field"), py::arg("grid"), py::arg("region") = py::none(),
        py::arg("tol") = 1e-10);
  m.def("gagliardo_modular",
        [](const GridFunction& u, const ExponentField& f, double s, const Grid& g,
           std::optional<std::vector<std::size_t>> region) {
          const auto r = region_or_interior(g, region);
          return gagliardo_modular(u, f, s, g, r, r).value;
        },
        py::arg("u"), py::arg("field"), py::arg("s"), py::arg("grid"),
        py::arg("region") = py::none());
  m.def("sobolev_seminorm",
        [](const GridFunction& u, const ExponentField& f, double s, const Grid& g,
           std::optional<std::vector<std::size_t>> region, double tol) {
          const auto r = region_or_interior(g, region);
          return sobolev_seminorm(u, f, s, g, r, tol);
        },
        py::arg("u"), py::arg("field"), py::arg("s"), py::arg("grid"),
        py::arg("region") = py::none(), py::arg("tol") = 1e-10);

  py::class_<DeGiorgiResult>(m, "DeGiorgiResult")
      .def_property_readonly("Y", [](const DeGiorgiResult& r) {
        return std::vector<double>(r.Y.begin(), r.Y.end());
      })
      .def_property_readonly("bound", [](const DeGiorgiResult& r) {
        return std::vector<double>(r.bound.begin(), r.bound.end());
      })
      .def_readonly("threshold_met", &DeGiorgiResult::threshold_met)
      .def_readonly("bound_holds", &DeGiorgiResult::bound_holds);

  m.def("degiorgi_iterate",
        [](double C, double b, std::vector<double> betas, double Y0, int j_max) {
          return degiorgi_iterate(DeGiorgiParams{C, b, std::move(betas), Y0}, j_max);
        },
        py::arg("C") = 1.0, py::arg("b") = 2.0, py::arg("betas") = std::vector<double>{1.0},
        py::arg("Y0") = 0.5, py::arg("j_max") = 10);

  py::class_<HolderFit>(m, "HolderFit")
      .def_readonly("radii", &HolderFit::radii)
      .def_readonly("osc", &HolderFit::osc)
      .def_readonly("alpha", &HolderFit::alpha)
      .def_readonly("defined", &HolderFit::defined);

  m.def("holder_exponent_fit",
        [](const Grid& g, const GridFunction& u, std::vector<double> x0, double R, int j_max) {
          return holder_exponent_fit(g, u, as_point(x0), R, j_max);
        },
        py::arg("grid"), py::arg("u"), py::arg("x0"), py::arg("R"), py::arg("j_max") = 3);

  m.def("algebraic_inequality_holds",
        [](double a, double b, double t1, double t2, double p, double pm, double pp) {
          return algebraic_inequality_check(a, b, t1, t2, p, pm, pp).holds;
        });

  py::class_<ConditionReport>(m, "ConditionReport")
      .def_readonly("passed", &ConditionReport::pass)
      .def_readonly("L_est", &ConditionReport::L_est)
      .def_readonly("per_level", &ConditionReport::per_level);

  m.def("check_P1",
        [](const ExponentField& f, const GridSpec& spec, std::vector<double> radii,
           std::vector<std::vector<double>> centers, int refinements) {
          std::vector<Point> c;
          for (auto& v : centers) c.push_back(as_point(v));
          return check_P1(f, spec, radii, c, refinements);
        },
        py::arg("field"), py::arg("spec"), py::arg("radii"), py::arg("centers"),
        py::arg("refinements") = 2);
  m.def("check_P2",
        [](const ExponentField& f, const Grid& g, std::vector<double> radii,
           std::vector<std::vector<double>> centers) {
          std::vector<Point> c;
          for (auto& v : centers) c.push_back(as_point(v));
          return check_P2(f, g, radii, c);
        },
        py::arg("field"), py::arg("grid"), py::arg("radii"), py::arg("centers"));
  m.def("check_log_holder",
        [](const ExponentField& f, const Grid& g, std::vector<double> scales) {
          return check_log_holder(f, g, scales);
        },
        py::arg("field"), py::arg("grid"), py::arg("scales"));
}
