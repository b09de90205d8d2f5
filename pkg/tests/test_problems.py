"""Test problems: fluxes, exact solutions, initialization, error norms."""

import math

import numpy as np
import pytest

from nuweno.fvm import BoundaryKind, FluxKind, StateField
from nuweno.grid import PAPER_SEEDS, CellGrid, perturbed_grid
from nuweno.problems import (
    EulerState,
    advection_problem,
    burgers_problem,
    delta_problem,
    error_norms,
    euler_flux,
    euler_max_wavespeed,
    euler_pressure,
    euler_primitive_to_conserved,
    init_cell_averages,
    shu_osher_problem,
    solve,
)

RNG = np.random.default_rng(5150)

GAUSS_NODES, GAUSS_WEIGHTS = np.polynomial.legendre.leggauss(5)


def spot_check_initial_consistency(problem, n_points=100):
    a, b = problem.domain
    x = RNG.uniform(a, b, n_points)
    initial = np.asarray(problem.initial(x), dtype=float)
    exact = np.asarray(problem.exact(x, 0.0), dtype=float)
    np.testing.assert_allclose(exact, initial, rtol=1e-12, atol=1e-12)


class TestAdvection:
    def test_smooth_exact_at_zero(self):
        spot_check_initial_consistency(advection_problem("smooth"))

    def test_step_exact_at_zero(self):
        spot_check_initial_consistency(advection_problem("step"))

    def test_smooth_exact_value(self):
        problem = advection_problem("smooth")
        assert problem.exact(0.5, 1.0) == pytest.approx(-0.25)

    def test_step_left_closed(self):
        problem = advection_problem("step")
        assert problem.initial(np.array([0.0]))[0] == -0.25
        assert problem.initial(np.array([1e-12]))[0] == 1.0

    def test_step_exact_translates_with_wrap(self):
        problem = advection_problem("step")
        assert problem.exact(np.array([0.4]), 0.25)[0] == 1.0
        assert problem.exact(np.array([0.1]), 0.25)[0] == -0.25
        # jump locations advect and wrap into the open interval
        jumps = problem.jumps_at(1.5)
        assert set(np.round(jumps, 12)) == {-0.5, 0.5}

    def test_kind_is_upwind(self):
        assert advection_problem("smooth").flux_spec.kind is FluxKind.UPWIND_LEFT

    def test_exact_cell_average_matches_quadrature(self):
        problem = advection_problem("smooth")
        a = np.array([-0.3, 0.1])
        b = np.array([-0.1, 0.45])
        closed = problem.exact_cell_average(a, b, 0.7)
        mid, half = 0.5 * (a + b), 0.5 * (b - a)
        x = mid[:, None] + half[:, None] * GAUSS_NODES[None, :]
        quad = (problem.exact(x, 0.7) @ GAUSS_WEIGHTS) * 0.5
        np.testing.assert_allclose(closed, quad, rtol=1e-10)


class TestBurgers:
    def test_smooth_exact_at_zero(self):
        spot_check_initial_consistency(burgers_problem("smooth"))

    def test_constant_datum_is_fixed_point(self):
        problem = burgers_problem("smooth")
        # u0 at the sine zero-crossings moves with its own speed: spot-check
        # the implicit solve at a known fixed point instead
        value = problem.exact(np.array([0.3]), 0.3)[0]
        # frozen from a bisection solve of u = 0.25 + 0.5 sin(pi (0.3 - 0.3 u))
        assert value == pytest.approx(0.48377919910510947, abs=1e-13)

    def test_newton_residual(self):
        problem = burgers_problem("smooth")
        x = RNG.uniform(-1.0, 1.0, 200)
        u = problem.exact(x, 0.3)
        residual = u - (0.25 + 0.5 * np.sin(np.pi * (x - 0.3 * u)))
        assert np.max(np.abs(residual)) < 1e-13

    def test_post_shock_query_raises(self):
        problem = burgers_problem("smooth")
        with pytest.raises(RuntimeError, match="characteristics cross"):
            problem.exact(np.linspace(-1, 1, 101), 5.0)

    def test_step_has_no_exact(self):
        problem = burgers_problem("step")
        assert problem.exact is None
        assert problem.jumps_at(0.0) == (0.0,)


class TestDelta:
    def test_initial_is_one(self):
        problem = delta_problem()
        x = RNG.uniform(0, 2 * np.pi, 100)
        np.testing.assert_allclose(problem.exact(x, 0.0), 1.0, rtol=1e-13)

    def test_value_at_pi(self):
        problem = delta_problem()
        for t in (0.5, 2.0, 8.0):
            assert problem.exact(np.pi, t) == pytest.approx(math.exp(t), rel=1e-12)

    def test_mass_is_2pi_at_t8(self):
        # oracle: composite 5-point Gauss quadrature over 1e4 panels
        problem = delta_problem()
        edges = np.linspace(0, 2 * np.pi, 10_001)
        mid, half = 0.5 * (edges[:-1] + edges[1:]), 0.5 * np.diff(edges)
        x = mid[:, None] + half[:, None] * GAUSS_NODES[None, :]
        total = float(np.sum(half[:, None] * GAUSS_WEIGHTS[None, :] * problem.exact(x, 8.0)))
        assert total == pytest.approx(2 * np.pi, abs=1e-6)

    def test_antiderivative_consistency(self):
        # closed-form cell averages agree with fine quadrature near the spike
        problem = delta_problem()
        a = np.array([np.pi - 2e-3, np.pi - 1e-4, np.pi + 5e-4])
        b = np.array([np.pi - 1e-4, np.pi + 5e-4, np.pi + 3e-3])
        closed = problem.exact_cell_average(a, b, 8.0)
        quad = []
        for lo, hi in zip(a, b):
            edges = np.linspace(lo, hi, 2001)
            mid, half = 0.5 * (edges[:-1] + edges[1:]), 0.5 * np.diff(edges)
            x = mid[:, None] + half[:, None] * GAUSS_NODES[None, :]
            quad.append(
                float(np.sum(half[:, None] * GAUSS_WEIGHTS[None, :] * problem.exact(x, 8.0)))
                / (hi - lo)
            )
        np.testing.assert_allclose(closed, quad, rtol=1e-10)

    def test_flux_is_position_dependent(self):
        problem = delta_problem()
        assert problem.flux_spec.x_dependent
        x = np.array([0.0, np.pi / 2, np.pi])
        u = np.ones(3)
        np.testing.assert_allclose(
            problem.flux_spec.flux(x, u), np.sin(x), atol=1e-15
        )
        assert problem.flux_spec.max_wavespeed(u) == 1.0


class TestEuler:
    def test_left_state(self):
        problem = shu_osher_problem()
        left = np.asarray(problem.bc.left_state)
        rho, v, p = 27.0 / 7.0, 4.0 * math.sqrt(35.0) / 9.0, 31.0 / 3.0
        assert left[0] == pytest.approx(rho)
        assert left[1] == pytest.approx(rho * v)
        assert left[2] == pytest.approx(p / 0.4 + 0.5 * rho * v * v)

    def test_pressure_from_conserved(self):
        u = np.array([1.0, 0.0, 2.5])
        assert euler_pressure(u) == pytest.approx(1.0)

    def test_flux_at_rest(self):
        u = np.array([1.0, 0.0, 2.5])
        np.testing.assert_allclose(euler_flux(u), [0.0, 1.0, 0.0], atol=1e-15)

    def test_wavespeed(self):
        u = euler_primitive_to_conserved(1.0, 0.0, 1.0)
        assert euler_max_wavespeed(u[None, :]) == pytest.approx(math.sqrt(1.4))

    def test_state_invariants(self):
        with pytest.raises(ValueError):
            EulerState(rho=-1.0, mom=0.0, E=1.0)
        with pytest.raises(ValueError):
            EulerState(rho=1.0, mom=3.0, E=1.0)  # negative pressure
        state = EulerState(rho=1.0, mom=0.0, E=2.5)
        assert state.pressure == pytest.approx(1.0)
        np.testing.assert_array_equal(state.as_array(), [1.0, 0.0, 2.5])

    def test_initial_profile(self):
        problem = shu_osher_problem()
        values = problem.initial(np.array([-4.5, 0.0]))
        assert values[0, 0] == pytest.approx(27.0 / 7.0)
        assert values[1, 0] == pytest.approx(1.0 + 0.2 * math.sin(0.0))
        assert values[1, 1] == 0.0


class TestInitCellAverages:
    def test_constant_data(self):
        problem = delta_problem()
        grid = CellGrid(np.linspace(0, 2 * np.pi, 33))
        field = init_cell_averages(problem, grid)
        np.testing.assert_allclose(field.cells, 1.0, rtol=1e-14)

    def test_linear_data_hits_midpoint(self):
        problem = advection_problem("smooth")
        import dataclasses

        linear = dataclasses.replace(problem, initial=lambda x: 2.0 * np.asarray(x) + 1.0,
                                     jumps_at=None)
        grid, _ = perturbed_grid(16, 0.2, PAPER_SEEDS)
        field = init_cell_averages(linear, grid)
        np.testing.assert_allclose(field.cells, 2.0 * grid.centers + 1.0, rtol=1e-13)

    def test_jump_splitting(self):
        # a cell straddling the jump gets the width-weighted mix
        problem = advection_problem("step")
        grid = CellGrid(np.array([-1.0, -0.01, 0.03, 1.0]))
        field = init_cell_averages(problem, grid)
        expected_mid = (0.01 * (-0.25) + 0.03 * 1.0) / 0.04
        assert field.cells[0] == pytest.approx(-0.25, rel=1e-14)
        assert field.cells[1] == pytest.approx(expected_mid, rel=1e-12)
        assert field.cells[2] == pytest.approx(1.0, rel=1e-14)

    def test_sine_averages_match_antiderivative(self):
        problem = advection_problem("smooth")
        grid, _ = perturbed_grid(20, 0.1, PAPER_SEEDS)
        field = init_cell_averages(problem, grid)
        exact = problem.exact_cell_average(
            grid.interfaces[:-1], grid.interfaces[1:], 0.0
        )
        np.testing.assert_allclose(field.cells, exact, rtol=1e-12)

    def test_euler_initialization_shape(self):
        problem = shu_osher_problem()
        grid = CellGrid(np.linspace(-5, 5, 65))
        field = init_cell_averages(problem, grid)
        assert field.cells.shape == (64, 3)
        assert np.all(field.cells[:, 0] > 0)


class TestErrorNorms:
    def test_exact_field_gives_zero(self):
        problem = advection_problem("smooth")
        grid, _ = perturbed_grid(24, 0.2, PAPER_SEEDS)
        field = init_cell_averages(problem, grid)
        l1, linf = error_norms(field, problem, 0.0)
        assert l1 < 1e-14
        assert linf < 1e-14

    def test_single_cell_perturbation(self):
        problem = advection_problem("smooth")
        grid, _ = perturbed_grid(24, 0.2, PAPER_SEEDS)
        field = init_cell_averages(problem, grid)
        cells = field.cells.copy()
        cells[5] += 1e-3
        l1, linf = error_norms(StateField(grid, cells), problem, 0.0)
        assert l1 == pytest.approx(float(grid.widths[5]) * 1e-3, rel=1e-9)
        assert linf == pytest.approx(1e-3, rel=1e-9)

    def test_requires_exact_solution(self):
        problem = burgers_problem("step")
        grid, _ = perturbed_grid(16, 0.1, PAPER_SEEDS)
        field = init_cell_averages(problem, grid)
        with pytest.raises(ValueError, match="exact"):
            error_norms(field, problem, 0.0)


class TestShortRuns:
    def test_delta_mass_conservation(self):
        # conservative form: total mass 2 pi preserved through the run
        problem = delta_problem()
        grid = CellGrid(np.linspace(0, 2 * np.pi, 201))
        import dataclasses

        short = dataclasses.replace(problem, final_time=0.5)
        field, steps = solve(short, grid)
        mass = float(np.sum(field.cells * grid.widths))
        assert steps > 10
        assert mass == pytest.approx(2 * np.pi, rel=1e-12)

    def test_advection_step_run_is_essentially_non_oscillatory(self):
        # the full discontinuous run (T = 1.5, xi = 0.25, n = 100) produces
        # no new extrema beyond the data range expanded by 5e-2
        problem = advection_problem("step")
        grid, _ = perturbed_grid(100, 0.25, PAPER_SEEDS)
        field, _ = solve(problem, grid)
        assert field.cells.min() > -0.25 - 5e-2
        assert field.cells.max() < 1.0 + 5e-2

    def test_shu_osher_short_run_positive(self):
        problem = shu_osher_problem()
        import dataclasses

        short = dataclasses.replace(problem, final_time=0.05)
        grid = CellGrid(np.linspace(-5, 5, 129))
        field, _ = solve(short, grid)
        assert np.all(field.cells[:, 0] > 0)
        assert np.all(euler_pressure(field.cells) > 0)

    def test_shu_osher_coarse_run_inflow_dominated(self):
        # even n = 16 completes; the inflow end stays pinned at the shocked
        # state and everything remains positive
        problem = shu_osher_problem()
        grid = CellGrid(np.linspace(-5, 5, 17))
        field, _ = solve(problem, grid)
        assert np.all(field.cells[:, 0] > 0)
        assert np.all(euler_pressure(field.cells) > 0)
        assert field.cells[0, 0] == pytest.approx(27.0 / 7.0, rel=0.05)
