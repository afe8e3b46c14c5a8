import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ptone import radial
from ptone.radial import Annulus, RadialProblem, ball_problem
from ptone.modelspace import space_form
from ptone.rayleigh import (DiscreteField, Grid1D, minimize_rayleigh,
                            p_energy, p_norm_mass, rayleigh_quotient)


def unit_ball_grid(n=400, m=2):
    problem = ball_problem(2.0, m, 0.0, 1.0)
    return Grid1D.from_problem(problem, n=n)


def test_grid_validation():
    with pytest.raises(ValueError):
        Grid1D([0.0, 1.0], [1.0, 1.0], (False, True))
    with pytest.raises(ValueError):
        Grid1D([0.0, 0.5, 0.4], [1.0, 1.0, 1.0], (False, True))
    with pytest.raises(ValueError):
        Grid1D([0.0, 0.5, 1.0], [1.0, 1.0], (False, True))
    with pytest.raises(ValueError):
        Grid1D([0.0, 0.5, 1.0], [1.0, -1.0, 1.0], (False, True))


def test_from_problem_ball():
    problem = ball_problem(2.0, 3, 0.0, 1.0)
    grid = Grid1D.from_problem(problem, n=101)
    assert grid.n == 101
    assert grid.bc == (False, True)
    assert grid.weight[0] == 0.0                    # f^{m-1} at the pole
    assert grid.weight[50] == pytest.approx(grid.nodes[50] ** 2, rel=1e-12)


def test_from_problem_m1_weight_is_one():
    problem = ball_problem(3.0, 1, 0.0, 1.0)
    grid = Grid1D.from_problem(problem, n=64)
    assert np.all(grid.weight == 1.0)


def test_from_problem_annulus():
    problem = RadialProblem(2.0, 2, space_form(0.0), Annulus(0.5, 1.5))
    grid = Grid1D.from_problem(problem, n=64)
    assert grid.bc == (True, True)
    assert grid.nodes[0] == 0.5 and grid.nodes[-1] == 1.5


def test_boundary_profile_is_distance_field():
    grid = unit_ball_grid(n=11)
    prof = np.asarray(grid.boundary_profile())
    assert prof[-1] == 0.0
    assert prof[0] == pytest.approx(1.0)            # distance to t = 1
    grid2 = Grid1D([0.0, 0.25, 0.5, 0.75, 1.0], np.ones(5), (True, True))
    prof2 = np.asarray(grid2.boundary_profile())
    assert prof2[0] == prof2[-1] == 0.0
    assert prof2[2] == pytest.approx(0.5)
    free = Grid1D([0.0, 0.5, 1.0], np.ones(3), (False, False))
    with pytest.raises(ValueError):
        free.boundary_profile()


@pytest.mark.parametrize("p", [1.5, 2.0, 3.0])
def test_p_energy_linear_field(p):
    grid = Grid1D(np.linspace(0.0, 1.0, 21), np.ones(21), (False, True))
    u = 1.0 - grid.nodes
    assert p_energy(u, grid, p) == pytest.approx(1.0, rel=1e-12)
    assert p_norm_mass(np.ones(21), grid, p) == pytest.approx(1.0,
                                                              rel=1e-12)


def test_bc_enforced():
    grid = unit_ball_grid(n=16)
    with pytest.raises(ValueError):
        p_energy(np.ones(grid.n), grid, 2.0)
    with pytest.raises(ValueError):
        rayleigh_quotient(np.zeros(grid.n), grid, 2.0)


@settings(max_examples=25, deadline=None)
@given(st.floats(min_value=1e-3, max_value=1e3),
       st.sampled_from([1.5, 2.0, 3.0]))
def test_quotient_scale_invariance(scale, p):
    grid = Grid1D(np.linspace(0.0, 1.0, 33), np.ones(33), (False, True))
    rng = np.random.default_rng(7)
    u = rng.uniform(0.1, 1.0, 33)
    u[-1] = 0.0
    base = rayleigh_quotient(u, grid, p)
    assert rayleigh_quotient(scale * u, grid, p) == pytest.approx(
        base, rel=1e-12)


def test_string_quotient_of_sine():
    # u = sin(pi t) on the unit string: continuum quotient pi^2.
    grid = Grid1D(np.linspace(0.0, 1.0, 2001), np.ones(2001), (True, True))
    u = np.sin(math.pi * grid.nodes)
    u[0] = u[-1] = 0.0
    assert rayleigh_quotient(u, grid, 2.0) == pytest.approx(math.pi ** 2,
                                                            rel=1e-4)


@pytest.mark.parametrize("p,m,c", [(2.0, 3, 0.0), (3.0, 2, 0.0),
                                   (2.0, 2, -1.0), (1.5, 2, 1.0)])
def test_minimize_matches_shooting(p, m, c):
    problem = ball_problem(p, m, c, 1.0)
    lam = radial.solve_ball_eigenvalue(problem).lam
    res = minimize_rayleigh(Grid1D.from_problem(problem, n=2000), p)
    assert res["lambda_est"] == pytest.approx(lam, rel=1e-3)
    assert res["iterations"] > 0


def test_minimizer_is_ground_state():
    problem = ball_problem(2.5, 2, 0.0, 1.0)
    grid = Grid1D.from_problem(problem, n=500)
    res = minimize_rayleigh(grid, 2.5)
    u = np.asarray(res["u_min"])
    assert np.all(u[:-1] > 0.0) and u[-1] == 0.0
    assert p_norm_mass(u, grid, 2.5) == pytest.approx(1.0, rel=1e-8)
    assert rayleigh_quotient(u, grid, 2.5) == pytest.approx(
        res["lambda_est"], rel=1e-12)
    # any admissible competitor sits at or above the minimum
    rng = np.random.default_rng(11)
    for _ in range(5):
        v = rng.uniform(0.05, 1.0, grid.n)
        v[-1] = 0.0
        assert rayleigh_quotient(v, grid, 2.5) >= res["lambda_est"] - 1e-9


def test_minimize_accepts_custom_init():
    problem = ball_problem(2.0, 2, 0.0, 1.0)
    grid = Grid1D.from_problem(problem, n=300)
    init = DiscreteField(1.0 - grid.nodes ** 2)
    res = minimize_rayleigh(grid, 2.0, init=init)
    lam = radial.solve_ball_eigenvalue(problem).lam
    assert res["lambda_est"] == pytest.approx(lam, rel=1e-3)
