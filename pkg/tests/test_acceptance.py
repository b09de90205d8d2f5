"""Acceptance criteria, one test per criterion at its stated tolerance.

Each test prints a single PASS/FAIL line (visible with ``pytest -v -s`` or in
captured output). The conventions and tolerances are frozen here; nothing is
deferred to later calibration.
"""

import math
import time

import numpy as np

from nuweno import fvm, problems, weno
from nuweno.cli import (
    bench_indicators,
    measured_order,
    run_algebraic,
    run_delta,
    run_pde_convergence,
    run_shuosher,
)
from nuweno.grid import PAPER_SEEDS, StencilGeometry, perturbed_grid
from nuweno.reconstruct import Framework, SampleData

RNG = np.random.default_rng(7777)


def _report(criterion, ok, detail, elapsed=None):
    status = "PASS" if ok else "FAIL"
    timing = "" if elapsed is None else f" [{elapsed:.1f}s]"
    print(f"ACCEPTANCE {criterion}: {status} ({detail}){timing}")


def random_stencil(n_coords, max_ratio=10.0):
    gaps = RNG.uniform(1.0, max_ratio, n_coords - 1)
    return np.concatenate([[0.0], np.cumsum(gaps)]) / (n_coords - 1)


def test_criterion_1_polynomial_exactness():
    """Degree <= R-2 exact on the smooth path; degree <= r exact under any d."""
    start = time.perf_counter()
    worst_full = worst_sub = 0.0
    for R in range(3, 9):
        params = weno.weno_params(R)
        for _ in range(100):
            framework = (
                Framework.POINT_VALUES if RNG.random() < 0.5 else Framework.CELL_AVERAGES
            )
            n_coords = R if framework is Framework.POINT_VALUES else R + 1
            c = random_stencil(n_coords)
            geom_probe = StencilGeometry(z=0.0, h=1.0, c=tuple(c), c_star=0.0)
            lo, hi = weno.admissible_range(geom_probe, framework, params)
            c_star = RNG.uniform(lo, hi)
            geom = StencilGeometry(z=0.0, h=1.0, c=tuple(c), c_star=c_star)

            def sample_poly(coeffs):
                if framework is Framework.POINT_VALUES:
                    return tuple(np.polyval(coeffs, c))
                anti = np.polyint(coeffs)
                return tuple(np.diff(np.polyval(anti, c)) / np.diff(c))

            # full-order path: degree R-2 kills the leading term
            coeffs = RNG.uniform(-1, 1, R - 1)
            values = sample_poly(coeffs)
            out = weno.reconstruct(geom, SampleData(framework, values), params)
            exact = np.polyval(coeffs, c_star)
            scale = max(abs(exact), max(abs(v) for v in values), 1e-30)
            worst_full = max(worst_full, abs(out.value - exact) / scale)

            # substencil path: degree r survives an arbitrary injected d
            coeffs = RNG.uniform(-1, 1, params.r + 1)
            values = sample_poly(coeffs)
            out = weno.reconstruct(
                geom, SampleData(framework, values), params, d_override=1e50
            )
            exact = np.polyval(coeffs, c_star)
            scale = max(abs(exact), max(abs(v) for v in values), 1e-30)
            worst_sub = max(worst_sub, abs(out.value - exact) / scale)
    elapsed = time.perf_counter() - start
    ok = worst_full <= 1e-12 and worst_sub <= 1e-12 and elapsed < 10.0
    _report(
        "1 polynomial exactness",
        ok,
        f"full-path {worst_full:.2e}, injected-d path {worst_sub:.2e}, rel tol 1e-12",
        elapsed,
    )
    assert worst_full <= 1e-12
    assert worst_sub <= 1e-12
    assert elapsed < 10.0


def test_criterion_2_weight_contract():
    """Convex weights on random inputs; d = 0 forces the uniform/full split."""
    start = time.perf_counter()
    ok = True
    worst_sum = 0.0
    for _ in range(10_000):
        R = int(RNG.integers(3, 13))
        params = weno.weno_params(R)
        indicators = RNG.uniform(0.0, 1.0, params.r_prime + 1) * 10.0 ** RNG.integers(
            -30, 20
        )
        d = float(RNG.uniform(0.0, 1.0) * 10.0 ** RNG.integers(-30, 20))
        omega, omega_global, J = weno.weights(list(indicators), d, params)
        total = math.fsum(omega)
        worst_sum = max(worst_sum, abs(total - 1.0))
        ok &= all(0.0 <= w <= 1.0 for w in omega)
        ok &= 0.0 < omega_global <= 1.0
        ok &= all(map(math.isfinite, list(omega) + [omega_global, J]))
    for R in (3, 5, 8):
        params = weno.weno_params(R)
        omega, omega_global, _ = weno.weights(
            list(RNG.uniform(0.1, 5.0, params.r_prime + 1)), 0.0, params
        )
        ok &= omega_global == 1.0
        ok &= all(abs(w - 1.0 / (params.r_prime + 1)) < 1e-14 for w in omega)
    elapsed = time.perf_counter() - start
    ok &= worst_sum <= 10 * np.spacing(1.0) and elapsed < 5.0
    _report(
        "2 weight contract",
        ok,
        f"2e4 random inputs, worst |sum w - 1| = {worst_sum:.2e}",
        elapsed,
    )
    assert ok
    assert elapsed < 5.0


def test_criterion_3_algebraic_binary64():
    """Desk-scale orders: restricted smooth test -> 5, discontinuous -> 6."""
    start = time.perf_counter()
    orders_smooth = []
    for window_start in (3, 4):  # both admissible five-node windows
        records, _ = run_algebraic(
            "test1",
            Framework.POINT_VALUES,
            20,
            stencil_size=5,
            window_start=window_start,
        )
        orders_smooth.append(measured_order(records, (1e-11, 1e-3)))
    records, _ = run_algebraic("test2", Framework.POINT_VALUES, 20)
    order_disc = measured_order(records, (1e-11, 1e-1))
    elapsed = time.perf_counter() - start
    ok = (
        all(o is not None and abs(o - 5.0) <= 0.3 for o in orders_smooth)
        and order_disc is not None
        and abs(order_disc - 6.0) <= 0.3
        and elapsed < 30.0
    )
    _report(
        "3 algebraic convergence (binary64)",
        ok,
        f"smooth orders {[round(o, 3) for o in orders_smooth]} (5 +/- 0.3), "
        f"discontinuous order {order_disc:.3f} (6 +/- 0.3)",
        elapsed,
    )
    assert ok


SMOOTH_REFERENCE_ORDERS_POINT = [12.0416, 12.0183, 12.0085, 12.0041, 12.0020,
                12.0010, 12.0005, 12.0002, 12.0001, 12.0001]
SMOOTH_REFERENCE_ORDERS_CELL = [10.9667, 10.9813, 10.9902, 10.9950, 10.9974,
               10.9987, 10.9994, 10.9997, 10.9998, 10.9999]
JUMP_REFERENCE_ORDERS_POINT = [6.8396, 7.6466, 6.9429, 6.5002, 6.2574,
                6.1306, 6.0658, 6.0330, 6.0165, 6.0083]
JUMP_REFERENCE_ORDERS_CELL = [7.5188, 7.2566, 6.6442, 6.3241, 6.1623,
               6.0812, 6.0406, 6.0203, 6.0102, 6.0051]


def test_criterion_4_algebraic_high_precision():
    """Reference order columns, levels 1-10, on the 100-digit backend."""
    start = time.perf_counter()
    worst = {"test1": 0.0, "test2": 0.0}
    for test, framework, column in (
        ("test1", Framework.POINT_VALUES, SMOOTH_REFERENCE_ORDERS_POINT),
        ("test1", Framework.CELL_AVERAGES, SMOOTH_REFERENCE_ORDERS_CELL),
        ("test2", Framework.POINT_VALUES, JUMP_REFERENCE_ORDERS_POINT),
        ("test2", Framework.CELL_AVERAGES, JUMP_REFERENCE_ORDERS_CELL),
    ):
        records, truncated = run_algebraic(test, framework, 11, backend="mpmath")
        assert truncated is None
        orders = [float(r.order) for r in records[1:]]
        worst[test] = max(
            worst[test], max(abs(o - ref) for o, ref in zip(orders, column))
        )
    elapsed = time.perf_counter() - start
    ok = worst["test1"] <= 0.01 and worst["test2"] <= 0.05
    _report(
        "4 algebraic convergence (high precision)",
        ok,
        f"smooth-table order deviation {worst['test1']:.2e} (tol 0.01), "
        f"discontinuous-table {worst['test2']:.2e} (tol 0.05)",
        elapsed,
    )
    assert ok


def test_criterion_5_advection_table():
    """L1 errors within factor 2 and orders within 0.2 of the reference table."""
    start = time.perf_counter()
    rows = run_pde_convergence("advection", [20, 40, 80, 160])
    reference_errors = [5.55e-05, 1.79e-06, 5.63e-08, 1.77e-09]
    reference_orders = [4.96, 4.99, 4.99]
    ratios = [row.e_l1 / ref for row, ref in zip(rows, reference_errors)]
    order_gaps = [
        abs(row.o_l1 - ref) for row, ref in zip(rows[1:], reference_orders)
    ]
    elapsed = time.perf_counter() - start
    ok = (
        all(0.5 <= ratio <= 2.0 for ratio in ratios)
        and all(gap <= 0.2 for gap in order_gaps)
        and elapsed < 120.0
    )
    _report(
        "5 advection table",
        ok,
        f"error ratios {[round(r, 3) for r in ratios]} (within factor 2), "
        f"order gaps {[round(g, 3) for g in order_gaps]} (tol 0.2)",
        elapsed,
    )
    assert ok


def test_criterion_6_burgers_table():
    """L1 orders within 0.3 of the reference table for n = 80..640."""
    start = time.perf_counter()
    rows = run_pde_convergence("burgers", [40, 80, 160, 320, 640])
    reference_orders = [4.86, 5.17, 5.07, 4.99]
    gaps = [abs(row.o_l1 - ref) for row, ref in zip(rows[1:], reference_orders)]
    elapsed = time.perf_counter() - start
    ok = all(gap <= 0.3 for gap in gaps) and elapsed < 300.0
    _report(
        "6 burgers table",
        ok,
        f"order gaps {[round(g, 3) for g in gaps]} (tol 0.3)",
        elapsed,
    )
    assert ok


def test_criterion_7_spike_grids():
    """Reference-magnitude checks for the spike problem.

    The uniform band and the monotone-decrease property hold. The geometric
    band is asserted exactly as stated and is a known failure from below:
    every faithful dissipation variant tried (interface-local, stencil-max,
    global wave-speed bounds) lands at 8.5e-4, ~1e-3, or 1.5e-1, never
    inside [9.57e-3, 8.61e-2]. This implementation resolves the spike
    markedly better than the reference number, which evidently reflects an
    unpublished detail of the reference runs; tuning dissipation to land
    inside the band would be arbitrary, so the assertion stays as stated.
    """
    start = time.perf_counter()
    rows = run_delta(
        [
            ("uniform", 3199),
            ("uniform", 6399),
            ("uniform", 12799),
            ("geometric", 99, 1.1),
        ]
    )
    uniform = {row.n: row.error for row in rows if row.label == "uniform"}
    geometric = next(row.error for row in rows if row.label != "uniform")
    elapsed = time.perf_counter() - start
    uniform_band = 3.47e-01 / 2.0 <= uniform[6399] <= 3.47e-01 * 2.0
    monotone = uniform[3199] > uniform[6399] > uniform[12799]
    geometric_band = 2.87e-2 / 3.0 <= geometric <= 2.87e-2 * 3.0
    ok = uniform_band and monotone and geometric_band and elapsed < 900.0
    _report(
        "7 spike grids",
        ok,
        f"uniform n=6399 error {uniform[6399]:.3e} (band around 3.47e-1: "
        f"{uniform_band}), monotone {monotone}, geometric error "
        f"{geometric:.3e} (band around 2.87e-2: {geometric_band})",
        elapsed,
    )
    assert uniform_band
    assert monotone
    assert elapsed < 900.0
    assert geometric_band, (
        f"geometric-grid error {geometric:.3e} lies below the stated band "
        "[9.57e-3, 8.61e-2]: the solver is more accurate on this grid than "
        "the reference value (known failure, see this test's docstring)"
    )


def test_criterion_8_shock_sine_interaction():
    """Positivity on both grids at n = 256 and monotone self-convergence."""
    start = time.perf_counter()
    result = run_shuosher(256, 8192, convergence_n=(256, 512, 1024))
    minima = result["minima"]
    positive = all(
        minima[kind][field] > 0.0
        for kind in ("uniform", "perturbed")
        for field in ("rho", "p")
    )
    errors = [error for _, error in result["convergence"]]
    monotone = errors[0] > errors[1] > errors[2]
    elapsed = time.perf_counter() - start
    ok = positive and monotone and elapsed < 600.0
    _report(
        "8 shock/sine interaction",
        ok,
        f"min density/pressure positive: {positive}, self-convergence "
        f"{[f'{e:.3e}' for e in errors]} monotone: {monotone}",
        elapsed,
    )
    assert positive
    assert monotone
    assert elapsed < 600.0


def test_criterion_9_indicator_cost():
    """Fitted cost exponent over R in {5, 9, 13, 17, 21} stays below 1.3."""
    start = time.perf_counter()
    rows, exponent = bench_indicators([5, 9, 13, 17, 21], repetitions=100_000)
    elapsed = time.perf_counter() - start
    ok = exponent <= 1.3 and elapsed < 120.0
    _report(
        "9 indicator cost",
        ok,
        f"exponent {exponent:.3f} (limit 1.3), "
        f"times {[f'{t*1e6:.1f}us' for _, t in rows]}",
        elapsed,
    )
    assert exponent <= 1.3
    assert elapsed < 120.0


def test_criterion_10_conservation():
    """Periodic Burgers step run: mass drift below 1e-12 over 1000 steps."""
    start = time.perf_counter()
    problem = problems.burgers_problem("step")
    grid, _ = perturbed_grid(100, 0.25, PAPER_SEEDS)
    field = problems.init_cell_averages(problem, grid)
    mass0 = math.fsum(field.cells * grid.widths)
    dt = fvm.compute_dt(grid, problem.dt_policy)
    final, _, steps = fvm.integrate(
        field,
        problem.flux_spec,
        problem.bc,
        dt_policy=fvm.FixedDt(dt),
        max_steps=1000,
        rk_order=3,
    )
    mass1 = math.fsum(final.cells * grid.widths)
    drift = abs(mass1 - mass0) / abs(mass0)
    elapsed = time.perf_counter() - start
    ok = steps == 1000 and drift <= 1e-12
    _report(
        "10 conservation",
        ok,
        f"relative mass drift {drift:.2e} over {steps} steps (tol 1e-12)",
        elapsed,
    )
    assert steps == 1000
    assert drift <= 1e-12
