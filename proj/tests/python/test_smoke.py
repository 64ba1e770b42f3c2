"""Smoke tests for the varineq Python bindings."""

import math

import numpy as np
import pytest

import varineq as vq


def test_sector_solve_variant_r():
    p = vq.parabola_sector()
    cfg = vq.SolverConfig()
    cfg.residual_tol = 1e-13
    cfg.projection_tol = 1e-12
    result = vq.solve(p, np.array([2.0]), cfg)
    assert result.status == vq.SolveStatus.Solved
    assert abs(result.final_x[0]) <= 1e-6
    assert result.trace[0].k == 0
    assert vq.is_solution(p, result.final_x, 1e-6)


def test_moreau_split_orthant_matches_numpy():
    cone = vq.orthant_cone(4)
    y = np.array([1.5, -2.0, 0.0, 3.25])
    plus, minus = vq.moreau_split(cone, y)
    np.testing.assert_array_equal(plus, np.maximum(y, 0.0))
    np.testing.assert_array_equal(minus, np.minimum(y, 0.0))


def test_dykstra_agrees_with_qp_oracle():
    halfspaces = [
        vq.Halfspace(np.array([1.0, 0.0]), 0.0),
        vq.Halfspace(np.array([0.0, 1.0]), 0.5),
    ]
    members = [vq.FeasibleSet.polyhedron(halfspaces)]
    x = np.array([1.0, 2.0])
    p = vq.dykstra_project(members, x)
    q = vq.project_qp_oracle(halfspaces, x)
    assert np.linalg.norm(p - q) <= 1e-8


def test_variant_s_reaches_nearest_solution():
    A = np.array([[1.0, 0.0], [0.0, 1.0]])
    b = np.array([0.0, 0.0])
    C = vq.FeasibleSet.box(np.array([-2.0, -2.0]), np.array([2.0, 2.0]))
    p = vq.affine_orthant(A, b, C)
    cfg = vq.SolverConfig()
    cfg.variant = vq.Variant.S
    result = vq.solve(p, np.array([1.5, 1.0]), cfg)
    assert result.success()
    np.testing.assert_allclose(result.final_x, [0.0, 0.0], atol=1e-7)
    audit = vq.s_monotonicity_audit(result, np.array([0.0, 0.0]))
    assert audit.passes()


def test_python_callables_drive_the_solver():
    def F(x):
        t = x[0]
        return np.array([t * t, t])

    def subgrad(x):
        return np.array([[2.0 * x[0]], [1.0]])

    def cone_at(y):
        if y[0] == 0.0:
            theta = math.pi / 2.0
        else:
            theta = 0.75 * math.pi - 0.5 * math.atan(y[1] ** 2 / y[0] ** 2)
        return vq.sector_cone(0.0, theta)

    oracle = vq.VectorFunctionOracle(1, 2, F, subgrad)
    cone_map = vq.ConeMap(2, cone_at, "python sector map")
    p = vq.ProblemInstance(oracle, cone_map, vq.FeasibleSet.whole_space(1),
                           "python_sector")
    cfg = vq.SolverConfig()
    cfg.residual_tol = 1e-12
    cfg.projection_tol = 1e-13
    result = vq.solve(p, np.array([1.0]), cfg)
    assert result.status == vq.SolveStatus.Solved
    assert abs(result.final_x[0]) <= 1e-5


def test_grid_scan_finds_the_origin():
    p = vq.parabola_sector()
    report = vq.grid_solution_scan(p, np.array([-3.0]), np.array([3.0]), 601, 1e-4)
    assert report.candidates
    assert all(abs(c.x[0]) <= 1e-2 + 1e-12 for c in report.candidates)
    assert vq.convexity_of_S_star_check(p, report, 50, 1e-4)


def test_infeasible_projection_raises():
    members = [
        vq.FeasibleSet.ball(np.zeros(2), 1.0),
        vq.FeasibleSet.halfspace(vq.Halfspace(np.array([-1.0, 0.0]), -2.0)),
    ]
    with pytest.raises(vq.ProjectionError):
        vq.dykstra_project(members, np.zeros(2), 1e-10, 1000)
