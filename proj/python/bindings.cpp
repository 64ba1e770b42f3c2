// varineq - solver library for variable inequalities
// Licensed under Apache 2.0

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "varineq/diagnostics.hpp"
#include "varineq/solver.hpp"

namespace py = pybind11;
using namespace varineq;

PYBIND11_MODULE(_varineq, m) {
  m.doc() = "Subgradient-projection solver for variable inequalities "
            "F(x) <=_{K(F(x))} 0 over polyhedral cone orders";

  // ---- cones ----
  py::class_<PolyhedralCone>(m, "PolyhedralCone")
      .def(py::init<int, std::vector<Vec>>(), py::arg("dim"), py::arg("dual_normals"))
      .def_property_readonly("dim", &PolyhedralCone::dim)
      .def_property_readonly("dual_normals", &PolyhedralCone::dual_normals)
      .def("negated", &PolyhedralCone::negated);

  m.def("sector_cone", &sector_cone, py::arg("theta_lo"), py::arg("theta_hi"));
  m.def("orthant_cone", &orthant_cone, py::arg("m"));
  m.def("cone_contains", &cone_contains, py::arg("cone"), py::arg("y"),
        py::arg("tol") = 1e-9);
  m.def("in_minus_cone", &in_minus_cone, py::arg("cone"), py::arg("y"),
        py::arg("tol") = 1e-9);
  m.def("dual_contains", &dual_contains, py::arg("cone"), py::arg("z"),
        py::arg("tol") = 1e-9);
  m.def("project_cone", &project_cone, py::arg("cone"), py::arg("y"),
        py::arg("tol") = 1e-10);
  m.def(
      "moreau_split",
      [](const PolyhedralCone& cone, const Vec& y, double tol) {
        const auto split = moreau_split(cone, y, tol);
        return py::make_tuple(split.plus, split.minus);
      },
      py::arg("cone"), py::arg("y"), py::arg("tol") = 1e-10,
      "Returns (y_plus, y_minus) with y_plus in K*, y_minus in -K, orthogonal.");

  py::class_<ConeMap>(m, "ConeMap")
      .def(py::init<int, std::function<PolyhedralCone(const Vec&)>, std::string>(),
           py::arg("dim"), py::arg("eval"), py::arg("descriptor") = "user map")
      .def("__call__", &ConeMap::operator())
      .def_property_readonly("dim", &ConeMap::dim)
      .def_property_readonly("descriptor", &ConeMap::descriptor);
  m.def("constant_cone_map", &constant_cone_map, py::arg("cone"),
        py::arg("descriptor") = "constant");

  // ---- sets ----
  py::class_<Halfspace>(m, "Halfspace")
      .def(py::init<Vec, double>(), py::arg("a"), py::arg("b"))
      .def_readonly("a", &Halfspace::a)
      .def_readonly("b", &Halfspace::b)
      .def("signed_violation", &Halfspace::signed_violation)
      .def("contains", &Halfspace::contains, py::arg("x"), py::arg("tol") = 1e-9)
      .def("project", &Halfspace::project);

  py::class_<FeasibleSet>(m, "FeasibleSet")
      .def_static("whole_space", &FeasibleSet::whole_space, py::arg("n"))
      .def_static("box", &FeasibleSet::box, py::arg("lo"), py::arg("hi"))
      .def_static("ball", &FeasibleSet::ball, py::arg("center"), py::arg("radius"))
      .def_static("polyhedron", &FeasibleSet::polyhedron, py::arg("halfspaces"))
      .def_static("halfspace", &FeasibleSet::halfspace, py::arg("h"))
      .def_static("intersection", &FeasibleSet::intersection, py::arg("members"))
      .def_property_readonly("dim", &FeasibleSet::dim)
      .def("contains", &FeasibleSet::contains, py::arg("x"), py::arg("tol") = 1e-9);

  m.def("project_set", &project_set, py::arg("set"), py::arg("x"),
        py::arg("tol") = set_limits::kDefaultProjectionTol,
        py::arg("max_cycles") = set_limits::kDykstraMaxCycles);
  m.def(
      "dykstra_project",
      [](const std::vector<FeasibleSet>& members, const Vec& x, double tol,
         int max_cycles) { return dykstra_project(members, x, tol, max_cycles); },
      py::arg("members"), py::arg("x"),
      py::arg("tol") = set_limits::kDefaultProjectionTol,
      py::arg("max_cycles") = set_limits::kDykstraMaxCycles);
  m.def(
      "project_qp_oracle",
      [](const std::vector<Halfspace>& halfspaces, const Vec& x) {
        return project_qp_oracle(halfspaces, x);
      },
      py::arg("halfspaces"), py::arg("x"));
  m.def("box_halfspaces", &box_halfspaces, py::arg("lo"), py::arg("hi"));

  // ---- problems ----
  py::class_<VectorFunctionOracle>(m, "VectorFunctionOracle")
      .def(py::init([](int n, int m_, std::function<Vec(const Vec&)> F,
                       std::function<Mat(const Vec&)> subgrad) {
             return VectorFunctionOracle{n, m_, std::move(F), std::move(subgrad)};
           }),
           py::arg("n"), py::arg("m"), py::arg("F"), py::arg("subgrad"))
      .def_readonly("n", &VectorFunctionOracle::n)
      .def_readonly("m", &VectorFunctionOracle::m)
      .def("eval", &VectorFunctionOracle::eval)
      .def("subgradient", &VectorFunctionOracle::subgradient);

  py::class_<ProblemInstance>(m, "ProblemInstance")
      .def(py::init<VectorFunctionOracle, ConeMap, FeasibleSet, std::string,
                    std::optional<Vec>>(),
           py::arg("oracle"), py::arg("cone_map"), py::arg("feasible"),
           py::arg("name"), py::arg("known_solution") = std::nullopt)
      .def_readonly("oracle", &ProblemInstance::oracle)
      .def_readonly("cone_map", &ProblemInstance::cone_map)
      .def_readonly("feasible", &ProblemInstance::feasible)
      .def_readonly("name", &ProblemInstance::name)
      .def_readonly("known_solution", &ProblemInstance::known_solution);

  py::class_<CutSet>(m, "CutSet")
      .def_readonly("rows", &CutSet::rows)
      .def_readonly("empty", &CutSet::empty);

  m.def("build_H_halfspaces", &build_H_halfspaces, py::arg("p"), py::arg("x"),
        py::arg("U"));
  m.def("localization_halfspace", &localization_halfspace, py::arg("x_k"),
        py::arg("x_0"));
  m.def("residual", &residual, py::arg("p"), py::arg("x"), py::arg("tol") = 1e-9);
  m.def("is_solution", &is_solution, py::arg("p"), py::arg("x"), py::arg("tol") = 1e-9);

  m.def("affine_orthant", &affine_orthant, py::arg("A"), py::arg("b"), py::arg("C"),
        py::arg("name") = "affine_orthant");
  m.def("parabola_sector", &parabola_sector, py::arg("shift") = 0.0,
        py::arg("scale") = 1.0);
  m.def("paraboloid_flip", &paraboloid_flip);
  m.def("parabola_sector_cone_map", &parabola_sector_cone_map);

  m.def(
      "check_subgradient_validity",
      [](const ProblemInstance& p, const Vec& xbar, const Mat& U,
         const std::vector<Vec>& samples, double tol) {
        return check_subgradient_validity(p, xbar, U, samples, tol).ok();
      },
      py::arg("p"), py::arg("xbar"), py::arg("U"), py::arg("samples"),
      py::arg("tol") = 1e-9, "True when no sampled violation was found.");
  m.def(
      "check_k_convexity",
      [](const ProblemInstance& p, const std::vector<std::pair<Vec, Vec>>& pairs,
         const std::vector<double>& alphas, double tol) {
        return check_k_convexity(p, pairs, alphas, tol).ok();
      },
      py::arg("p"), py::arg("pairs"), py::arg("alphas"), py::arg("tol") = 1e-9);
  m.def(
      "check_A4",
      [](const ProblemInstance& p, const Vec& x_star, const std::vector<Vec>& samples,
         int ray_grid, double tol) {
        return check_A4(p, x_star, samples, ray_grid, tol).ok();
      },
      py::arg("p"), py::arg("x_star"), py::arg("samples"), py::arg("ray_grid") = 32,
      py::arg("tol") = 1e-9);

  // ---- solver ----
  py::enum_<Variant>(m, "Variant").value("R", Variant::R).value("S", Variant::S);
  py::enum_<SolveStatus>(m, "SolveStatus")
      .value("Solved", SolveStatus::Solved)
      .value("StoppedByStep", SolveStatus::StoppedByStep)
      .value("MaxIter", SolveStatus::MaxIter)
      .value("ProjectionFailure", SolveStatus::ProjectionFailure)
      .value("EmptyCut", SolveStatus::EmptyCut);

  py::class_<SolverConfig>(m, "SolverConfig")
      .def(py::init<>())
      .def_readwrite("variant", &SolverConfig::variant)
      .def_readwrite("step_tol", &SolverConfig::step_tol)
      .def_readwrite("residual_tol", &SolverConfig::residual_tol)
      .def_readwrite("max_iter", &SolverConfig::max_iter)
      .def_readwrite("projection_tol", &SolverConfig::projection_tol)
      .def_readwrite("projection_max_cycles", &SolverConfig::projection_max_cycles)
      .def_readwrite("soundness_tol", &SolverConfig::soundness_tol)
      .def_readwrite("record_trace", &SolverConfig::record_trace);

  py::class_<IterationRecord>(m, "IterationRecord")
      .def_readonly("k", &IterationRecord::k)
      .def_readonly("x", &IterationRecord::x)
      .def_readonly("residual", &IterationRecord::residual)
      .def_readonly("step_norm", &IterationRecord::step_norm)
      .def_readonly("dist_to_known", &IterationRecord::dist_to_known);

  py::class_<SolveResult>(m, "SolveResult")
      .def_readonly("status", &SolveResult::status)
      .def_readonly("final_x", &SolveResult::final_x)
      .def_readonly("trace", &SolveResult::trace)
      .def_readonly("variant", &SolveResult::variant)
      .def_readonly("start", &SolveResult::start)
      .def_readonly("start_projected", &SolveResult::start_projected)
      .def_readonly("step_stop_sound", &SolveResult::step_stop_sound)
      .def_readonly("iterations", &SolveResult::iterations)
      .def_readonly("message", &SolveResult::message)
      .def("success", &SolveResult::success);

  m.def("solve", &solve, py::arg("p"), py::arg("x0"), py::arg("cfg") = SolverConfig{});

  py::class_<FejerReport>(m, "FejerReport")
      .def_readonly("applicable", &FejerReport::applicable)
      .def_readonly("worst_slack", &FejerReport::worst_slack)
      .def_readonly("worst_k", &FejerReport::worst_k)
      .def_readonly("steps_checked", &FejerReport::steps_checked)
      .def_readonly("note", &FejerReport::note)
      .def("passes", &FejerReport::pass, py::arg("threshold") = -1e-9);
  m.def("fejer_audit", &fejer_audit, py::arg("result"), py::arg("x_ref"));

  py::class_<SMonotonicityReport>(m, "SMonotonicityReport")
      .def_readonly("applicable", &SMonotonicityReport::applicable)
      .def_readonly("worst_monotonicity_violation",
                    &SMonotonicityReport::worst_monotonicity_violation)
      .def_readonly("worst_ball_excess", &SMonotonicityReport::worst_ball_excess)
      .def_readonly("note", &SMonotonicityReport::note)
      .def("monotone", &SMonotonicityReport::monotone, py::arg("tol") = 1e-10)
      .def("ball_ok", &SMonotonicityReport::ball_ok, py::arg("tol") = 1e-8)
      .def("passes", &SMonotonicityReport::pass);
  m.def("s_monotonicity_audit", &s_monotonicity_audit, py::arg("result"),
        py::arg("x_ref") = std::nullopt);

  // ---- diagnostics ----
  py::class_<ScanCandidate>(m, "ScanCandidate")
      .def_readonly("x", &ScanCandidate::x)
      .def_readonly("residual", &ScanCandidate::residual);
  py::class_<ScanReport>(m, "ScanReport")
      .def_readonly("candidates", &ScanReport::candidates)
      .def_readonly("lo", &ScanReport::lo)
      .def_readonly("hi", &ScanReport::hi)
      .def_readonly("resolution", &ScanReport::resolution)
      .def_readonly("tol", &ScanReport::tol);
  m.def("grid_solution_scan", &grid_solution_scan, py::arg("p"), py::arg("lo"),
        py::arg("hi"), py::arg("resolution"), py::arg("tol"));
  m.def("convexity_of_S_star_check", &convexity_of_S_star_check, py::arg("p"),
        py::arg("report"), py::arg("samples"), py::arg("tol"),
        py::arg("seed") = 20240502u);

  py::register_exception<ProjectionError>(m, "ProjectionError");
  py::register_exception<NnlsError>(m, "NnlsError");
  py::register_exception<InfeasibleError>(m, "InfeasibleError");
}
