"""Experiment harness: the six numerical tests and the indicator benchmark.

Every subcommand reproduces one experiment and writes CSV tables (and, for
the PDE runs, solution snapshots) into the output directory. Errors follow
``o_n = log2(E_{n-1} / E_n)`` between consecutive refinement levels.
"""

from __future__ import annotations

import argparse
import dataclasses
import math
import sys
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import fvm, problems, weno
from .grid import (
    PAPER_SEEDS,
    CellGrid,
    StencilGeometry,
    algebraic_test_stencil,
    geometric_delta_grid,
    perturbed_grid,
)
from .reconstruct import Framework, SampleData

H0 = 0.2  # coarsest algebraic scale; level n uses h = H0 / 2**n
_MACHINE_EPS = float(np.finfo(float).eps)


@dataclass(frozen=True)
class ConvergenceRecord:
    """One refinement level: resolution, error, and measured order."""

    n: int
    h: object
    error: object
    order: object | None = None


@dataclass(frozen=True)
class PdeRow:
    n: int
    h_min: float
    e_l1: float
    o_l1: float | None
    e_linf: float
    o_linf: float | None


@dataclass(frozen=True)
class DeltaRow:
    label: str
    n: int
    h_min: float
    error: float
    order: float | None = None


# ---------------------------------------------------------------------------
# scalar backends for the algebraic tests
# ---------------------------------------------------------------------------


class _Binary64Backend:
    name = "binary64"

    convert = staticmethod(float)
    exp = staticmethod(math.exp)

    def __init__(self, epsilon=None):
        self.epsilon = weno.DEFAULT_EPSILON if epsilon is None else float(epsilon)

    @staticmethod
    def log2(x):
        return math.log2(x)

    @staticmethod
    def fmt(x):
        return f"{float(x):.16e}"


class _MpmathBackend:
    """Arbitrary-precision backend; 100 digits matches the reference tables."""

    name = "mpmath"

    def __init__(self, dps=100, epsilon=None):
        import mpmath

        self._mp = mpmath
        mpmath.mp.dps = dps
        self.convert = mpmath.mpf
        self.exp = mpmath.exp
        self.epsilon = (
            mpmath.mpf(10) ** -100000 if epsilon is None else mpmath.mpf(epsilon)
        )

    def log2(self, x):
        return self._mp.log(x, 2)

    def fmt(self, x):
        return self._mp.nstr(x, 17, min_fixed=1, max_fixed=0)


def _make_backend(name, dps=100, epsilon=None):
    if name == "binary64":
        return _Binary64Backend(epsilon)
    if name == "mpmath":
        return _MpmathBackend(dps, epsilon)
    raise ValueError(f"unknown backend {name!r}")


def _test_functions(test, backend):
    """(f, antiderivative) of the algebraic test in backend arithmetic."""
    exp = backend.exp
    one = backend.convert("1")

    def f_smooth(x):
        return x * exp(x)

    def F_smooth(x):
        return (x - one) * exp(x)

    if test == "test1":
        return f_smooth, F_smooth

    def f_jump(x):
        if x <= 0:
            return f_smooth(x)
        return 2 * x * exp(x) + one

    def F_jump(x):
        # continuous antiderivative across the jump at 0
        if x <= 0:
            return F_smooth(x)
        return 2 * (x - one) * exp(x) + x + one

    return f_jump, F_jump


def restrict_stencil(geom, framework, size, start=None):
    """Sub-stencil of ``size`` samples whose admissible window holds c*.

    Without ``start`` the window placing c* most centrally wins; with it the
    window is taken as given (and validated).
    """
    framework = Framework(framework)
    params = weno.weno_params(size)
    n_coords = size if framework is Framework.POINT_VALUES else size + 1
    candidates = range(len(geom.c) - n_coords + 1) if start is None else [start]
    best = None
    for k in candidates:
        sub = dataclasses.replace(geom, c=geom.c[k : k + n_coords])
        lo, hi = weno.admissible_range(sub, framework, params)
        margin = min(geom.c_star - lo, hi - geom.c_star)
        if margin >= 0 and (best is None or margin > best[0]):
            best = (margin, sub)
    if best is None:
        raise ValueError(f"no admissible {size}-sample window contains c*")
    return best[1]


def run_algebraic(
    test,
    framework,
    levels,
    *,
    backend="binary64",
    dps=100,
    epsilon=None,
    stencil_size=None,
    window_start=None,
    dump=None,
):
    """Reconstruction errors over dyadic refinements h = 0.2 / 2**n.

    Builds the hard-coded test stencil (optionally restricted to a smaller
    admissible window), samples the test function in backend arithmetic, and
    records |q - f(x*)| with measured orders. Binary64 runs stop at the last
    level whose error still clears the roundoff floor; the truncation level
    is returned alongside the records (None if untruncated).
    """
    if levels < 2:
        raise ValueError("need at least 2 refinement levels")
    be = _make_backend(backend, dps, epsilon)
    framework = Framework(framework)
    geom0 = algebraic_test_stencil(test, framework, convert=be.convert)
    if stencil_size is not None:
        geom0 = restrict_stencil(geom0, framework, stencil_size, window_start)
    R = len(geom0.c) if framework is Framework.POINT_VALUES else len(geom0.c) - 1
    params = weno.weno_params(R, epsilon=be.epsilon)
    f, F = _test_functions(test, be)

    records = []
    truncated_at = None
    previous_error = None
    for n in range(levels):
        h = be.convert(H0) / 2**n
        geom = dataclasses.replace(geom0, h=h)
        nodes = geom.nodes()
        if framework is Framework.POINT_VALUES:
            values = tuple(f(x) for x in nodes)
        else:
            values = tuple(
                (F(b) - F(a)) / (b - a) for a, b in zip(nodes, nodes[1:])
            )
        output = weno.reconstruct(geom, SampleData(framework, values), params)
        target = f(geom.x_star)
        error = abs(output.value - target)
        if be.name == "binary64":
            floor = 1e3 * _MACHINE_EPS * max(
                abs(target), max(abs(v) for v in values)
            )
            if not error > floor:
                truncated_at = n
                break
        order = be.log2(previous_error / error) if previous_error is not None else None
        records.append(ConvergenceRecord(n=n, h=h, error=error, order=order))
        if dump is not None:
            dump.append(weno.diagnostics_line(output, geom.c_star, fmt=be.fmt))
        previous_error = error
    return records, truncated_at


def measured_order(records, window):
    """Last order whose coarser-level error lies inside ``window = (lo, hi)``.

    The order sequence settles only once errors leave the preasymptotic
    range, so convergence checks key on the final qualifying entry.
    """
    lo, hi = window
    chosen = None
    for previous, record in zip(records, records[1:]):
        if record.order is None:
            continue
        if lo <= float(previous.error) <= hi:
            chosen = float(record.order)
    return chosen


# ---------------------------------------------------------------------------
# PDE convergence studies (advection and Burgers, smooth data)
# ---------------------------------------------------------------------------

_PDE_PROBLEMS = {
    "advection": lambda: problems.advection_problem("smooth"),
    "burgers": lambda: problems.burgers_problem("smooth"),
}


def run_pde_convergence(
    problem_key,
    n_list,
    *,
    xi=0.1,
    seed_policy="continue",
    centered=False,
    biased_window=False,
    epsilon=weno.DEFAULT_EPSILON,
):
    """Errors and orders of the full scheme on perturbed grids.

    The random-interface state threads through the refinement sequence unless
    ``seed_policy="restart"`` resets it for every resolution.
    """
    if seed_policy not in ("continue", "restart"):
        raise ValueError(f"unknown seed policy {seed_policy!r}")
    problem = _PDE_PROBLEMS[problem_key]()
    length = problem.domain[1] - problem.domain[0]
    state = PAPER_SEEDS
    rows = []
    previous = None
    for n in n_list:
        grid, next_state = perturbed_grid(n, xi, state, centered=centered)
        if seed_policy == "continue":
            state = next_state
        field, _ = _solve(problem, grid, biased_window=biased_window, epsilon=epsilon)
        l1, linf = problems.error_norms(field, problem, problem.final_time)
        l1 /= length  # the reference tables report the length-averaged L1 norm
        o_l1 = math.log2(previous[0] / l1) if previous else None
        o_linf = math.log2(previous[1] / linf) if previous else None
        rows.append(
            PdeRow(
                n=n,
                h_min=float(grid.widths.min()),
                e_l1=l1,
                o_l1=o_l1,
                e_linf=linf,
                o_linf=o_linf,
            )
        )
        previous = (l1, linf)
    return rows


def _solve(problem, grid, *, biased_window=False, epsilon=weno.DEFAULT_EPSILON,
           step_callback=None):
    recon = fvm.InterfaceReconstructor(
        grid, problem.bc, epsilon=epsilon, biased_window=biased_window
    )
    field = problems.init_cell_averages(problem, grid)
    final, _, steps = fvm.integrate(
        field,
        problem.flux_spec,
        problem.bc,
        t_end=problem.final_time,
        dt_policy=problem.dt_policy,
        rk_order=problem.rk_order,
        reconstructor=recon,
        step_callback=step_callback,
    )
    return final, steps


def run_profile(problem, n, *, xi, centered=False, biased_window=False):
    """Single run on a perturbed grid, for solution profiles (no error norm)."""
    grid, _ = perturbed_grid(n, xi, PAPER_SEEDS, centered=centered)
    field, _ = _solve(problem, grid, biased_window=biased_window)
    return field


# ---------------------------------------------------------------------------
# spike-formation test (uniform versus geometric grids)
# ---------------------------------------------------------------------------


def run_delta(grid_specs, *, epsilon=weno.DEFAULT_EPSILON, biased_window=False):
    """Integrate the spike problem on each grid and report width-weighted errors.

    ``grid_specs`` holds ("uniform", n) and ("geometric", m, kappa) entries.
    Orders are reported between consecutive uniform resolutions.
    """
    problem = problems.delta_problem()
    rows = []
    previous_uniform = None
    for spec in grid_specs:
        if spec[0] == "uniform":
            n = spec[1]
            grid = CellGrid(np.linspace(0.0, 2.0 * np.pi, n + 1))
            label = "uniform"
        elif spec[0] == "geometric":
            m, kappa = spec[1], spec[2]
            grid = geometric_delta_grid(m, kappa)
            label = f"geometric-kappa{kappa:g}"
        else:
            raise ValueError(f"unknown grid spec {spec!r}")
        field, _ = _solve(problem, grid, biased_window=biased_window, epsilon=epsilon)
        l1, _ = problems.error_norms(field, problem, problem.final_time)
        order = None
        if label == "uniform":
            if previous_uniform is not None:
                order = math.log2(previous_uniform / l1)
            previous_uniform = l1
        rows.append(
            DeltaRow(
                label=label,
                n=grid.n_cells,
                h_min=float(grid.widths.min()),
                error=l1,
                order=order,
            )
        )
    return rows


# ---------------------------------------------------------------------------
# shock / sine-wave interaction
# ---------------------------------------------------------------------------


def _uniform_grid(domain, n):
    return CellGrid(np.linspace(domain[0], domain[1], n + 1))


def _solve_tracked(problem, grid, *, biased_window=False):
    """Run to final time while tracking the minimum density and pressure."""
    minima = {"rho": np.inf, "p": np.inf}

    def callback(t, field):
        minima["rho"] = min(minima["rho"], float(field.cells[:, 0].min()))
        minima["p"] = min(minima["p"], float(problems.euler_pressure(field.cells).min()))

    field, _ = _solve(problem, grid, biased_window=biased_window, step_callback=callback)
    return field, minima


def project_to_coarse(reference, factor):
    """Block-average a nested uniform fine field onto the coarse grid."""
    cells = reference.cells
    shape = (cells.shape[0] // factor, factor) + cells.shape[1:]
    return cells.reshape(shape).mean(axis=1)


def shuosher_self_convergence(n_list, reference_field):
    """L1 density distance of uniform runs from a nested uniform reference."""
    problem = problems.shu_osher_problem()
    reference_n = reference_field.grid.n_cells
    rows = []
    for n in n_list:
        if reference_n % n:
            raise ValueError(f"reference resolution {reference_n} not nested in {n}")
        grid = _uniform_grid(problem.domain, n)
        field, _ = _solve(problem, grid)
        projected = project_to_coarse(reference_field, reference_n // n)
        l1 = float(np.sum(grid.widths * np.abs(field.cells[:, 0] - projected[:, 0])))
        rows.append((n, l1))
    return rows


def run_shuosher(
    n=256,
    reference_n=8192,
    *,
    xi=0.1,
    centered=False,
    biased_window=False,
    convergence_n=(),
    output_dir=None,
):
    """Uniform and perturbed runs at resolution n, plus a uniform reference.

    Returns the fields, the minimum density/pressure seen during each run,
    and (optionally) the self-convergence rows for ``convergence_n``.
    Snapshots are written when ``output_dir`` is given.
    """
    problem = problems.shu_osher_problem()
    uniform_field, uniform_minima = _solve_tracked(
        problem, _uniform_grid(problem.domain, n), biased_window=biased_window
    )
    half = 0.5 * (problem.domain[1] - problem.domain[0])
    base, _ = perturbed_grid(n, xi, PAPER_SEEDS, centered=centered)
    perturbed = CellGrid(half * base.interfaces)  # [-1, 1] scaled onto (-5, 5)
    perturbed_field, perturbed_minima = _solve_tracked(
        problem, perturbed, biased_window=biased_window
    )
    reference_field, _ = _solve(problem, _uniform_grid(problem.domain, reference_n))
    result = {
        "uniform": uniform_field,
        "perturbed": perturbed_field,
        "reference": reference_field,
        "minima": {"uniform": uniform_minima, "perturbed": perturbed_minima},
        "convergence": shuosher_self_convergence(convergence_n, reference_field)
        if convergence_n
        else [],
    }
    if output_dir is not None:
        output_dir = Path(output_dir)
        output_dir.mkdir(parents=True, exist_ok=True)
        fvm.write_snapshot(uniform_field, output_dir / f"shuosher_uniform_n{n}.txt")
        fvm.write_snapshot(perturbed_field, output_dir / f"shuosher_perturbed_n{n}.txt")
        fvm.write_snapshot(
            reference_field, output_dir / f"shuosher_reference_n{reference_n}.txt"
        )
    return result


# ---------------------------------------------------------------------------
# indicator cost benchmark
# ---------------------------------------------------------------------------


def bench_indicators(R_list, repetitions=100_000, seed=1234):
    """Mean time per indicator set against stencil size, with fitted exponent.

    Returns ``(rows, exponent)`` where rows hold (R, seconds per call) and
    the exponent is the least-squares slope of log time versus log R.
    """
    if len(R_list) < 2:
        raise ValueError("need at least 2 stencil sizes to fit an exponent")
    rng = np.random.default_rng(seed)
    rows = []
    for R in R_list:
        params = weno.weno_params(R)
        coords = tuple(np.cumsum(0.5 + rng.random(R)))
        geom = StencilGeometry(z=0.0, h=1.0, c=coords, c_star=coords[R // 2])
        data = SampleData(Framework.POINT_VALUES, tuple(rng.standard_normal(R)))
        weno.smoothness_indicators(geom, data, params)  # warm up
        start = time.perf_counter()
        for _ in range(repetitions):
            weno.smoothness_indicators(geom, data, params)
        elapsed = time.perf_counter() - start
        rows.append((R, elapsed / repetitions))
    log_r = np.log([row[0] for row in rows])
    log_t = np.log([row[1] for row in rows])
    exponent = float(np.polyfit(log_r, log_t, 1)[0])
    return rows, exponent


# ---------------------------------------------------------------------------
# CSV output
# ---------------------------------------------------------------------------


def _fmt(x):
    if x is None:
        return ""
    if isinstance(x, (int, np.integer)):
        return str(x)
    if isinstance(x, (float, np.floating)):
        return f"{x:.16e}"
    return str(x)


def write_csv(path, header, rows, footer=()):
    lines = [",".join(header)]
    lines.extend(",".join(_fmt(cell) for cell in row) for row in rows)
    lines.extend(f"# {note}" for note in footer)
    Path(path).write_text("\n".join(lines) + "\n")


def _algebraic_csv(path, records, truncated_at, fmt):
    rows = [(r.n, fmt(r.error), fmt(r.order) if r.order is not None else None)
            for r in records]
    footer = ()
    if truncated_at is not None:
        footer = (f"truncated at level {truncated_at}: binary64 roundoff floor",)
    write_csv(path, ["n", "E", "o"], rows, footer)


def _pde_csv(path, rows):
    write_csv(
        path,
        ["n", "h_min", "E_l1", "o_l1", "E_linf", "o_linf"],
        [(r.n, r.h_min, r.e_l1, r.o_l1, r.e_linf, r.o_linf) for r in rows],
    )


# ---------------------------------------------------------------------------
# command-line interface
# ---------------------------------------------------------------------------


def _add_common(parser):
    parser.add_argument("--output", default="out", help="output directory")
    parser.add_argument("--levels", type=int, default=20)
    parser.add_argument("--backend", choices=["binary64", "mpmath"], default="binary64")
    parser.add_argument("--epsilon", type=float, default=None)
    parser.add_argument("--dump-weights", action="store_true")
    parser.add_argument("--perturbation-centered", action="store_true")
    parser.add_argument("--biased-window", action="store_true")


def _parse_int_list(text):
    return [int(part) for part in text.split(",") if part]


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="nuweno", description="nonuniform-grid WENO experiment runner"
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for test in ("test1", "test2"):
        p = sub.add_parser(test, help=f"algebraic convergence ({test})")
        _add_common(p)
        p.add_argument("--framework", choices=["pv", "ca", "both"], default="both")
        p.add_argument("--dps", type=int, default=100)
        p.add_argument("--stencil-size", type=int, default=None)
    p = sub.add_parser("test3", help="linear advection: table and step profiles")
    _add_common(p)
    p.add_argument("--n-list", type=_parse_int_list, default=[20, 40, 80, 160, 320])
    p.add_argument("--xi", type=float, default=0.1)
    p.add_argument("--seed-policy", choices=["continue", "restart"], default="continue")
    p.add_argument("--skip-profiles", action="store_true")
    p = sub.add_parser("test4", help="Burgers: table and step profiles")
    _add_common(p)
    p.add_argument("--n-list", type=_parse_int_list, default=[40, 80, 160, 320, 640])
    p.add_argument("--xi", type=float, default=0.1)
    p.add_argument("--seed-policy", choices=["continue", "restart"], default="continue")
    p.add_argument("--skip-profiles", action="store_true")
    p = sub.add_parser("test5", help="spike formation on uniform and geometric grids")
    _add_common(p)
    p.add_argument(
        "--uniform", type=_parse_int_list,
        default=[100 * 2**j - 1 for j in range(1, 8)],
    )
    p.add_argument("--geometric", default="99:1.1,199:1.04",
                   help="comma-separated m:kappa pairs")
    p = sub.add_parser("test6", help="shock / sine-wave interaction")
    _add_common(p)
    p.add_argument("--n", type=int, default=256)
    p.add_argument("--reference-n", type=int, default=8192)
    p.add_argument("--convergence", type=_parse_int_list, default=[256, 512, 1024])
    p.add_argument("--xi", type=float, default=0.1)
    p = sub.add_parser("bench", help="indicator cost against stencil size")
    _add_common(p)
    p.add_argument("--sizes", type=_parse_int_list, default=[5, 9, 13, 17, 21])
    p.add_argument("--repetitions", type=int, default=100_000)
    return parser


def _cmd_algebraic(args):
    out = Path(args.output)
    out.mkdir(parents=True, exist_ok=True)
    frameworks = {
        "pv": [Framework.POINT_VALUES],
        "ca": [Framework.CELL_AVERAGES],
        "both": [Framework.POINT_VALUES, Framework.CELL_AVERAGES],
    }[args.framework]
    be = _make_backend(args.backend, args.dps, args.epsilon)
    stencil_size = args.stencil_size
    if (
        stencil_size is None
        and args.backend == "binary64"
        and args.command == "test1"
    ):
        stencil_size = 5  # the full smooth-test stencil is below the roundoff floor
    for framework in frameworks:
        tag = "point_values" if framework is Framework.POINT_VALUES else "cell_averages"
        dump = [] if args.dump_weights else None
        records, truncated = run_algebraic(
            args.command,
            framework,
            args.levels,
            backend=args.backend,
            dps=args.dps,
            epsilon=args.epsilon,
            stencil_size=stencil_size,
            dump=dump,
        )
        _algebraic_csv(out / f"{args.command}_{tag}.csv", records, truncated, be.fmt)
        if dump is not None:
            (out / f"{args.command}_{tag}_weights.csv").write_text(
                "\n".join(dump) + "\n"
            )
    return 0


def _dump_interface_weights(field, bc, path, *, epsilon=weno.DEFAULT_EPSILON):
    """Reconstruction diagnostics (q- side) at every interface of the final state."""
    from .fvm import GHOST_CELLS, _padded_interfaces, pad_cells

    grid = field.grid
    cells = field.cells if field.cells.ndim == 1 else field.cells[:, 0]
    bc_scalar = bc
    if bc.kind == fvm.BoundaryKind.INFLOW_OUTFLOW and field.cells.ndim > 1:
        bc_scalar = fvm.BoundarySpec(bc.kind, np.asarray(bc.left_state)[0])
    xi_pad = _padded_interfaces(grid, bc_scalar, GHOST_CELLS)
    u_pad = pad_cells(cells, bc_scalar, GHOST_CELLS)
    params = weno.weno_params(5, epsilon=epsilon)
    lines = []
    for j in range(grid.n_cells + 1):
        window = xi_pad[j : j + 6]
        x_star = grid.interfaces[j]
        scale = (window[-1] - window[0]) / 5.0  # same normalization as the solver
        geom = StencilGeometry(
            z=x_star, h=scale, c=tuple((window - x_star) / scale), c_star=0.0
        )
        data = SampleData(Framework.CELL_AVERAGES, tuple(u_pad[j : j + 5]))
        output = weno.reconstruct(geom, data, params)
        lines.append(weno.diagnostics_line(output, x_star))
    Path(path).write_text("\n".join(lines) + "\n")


def _cmd_pde(args):
    out = Path(args.output)
    out.mkdir(parents=True, exist_ok=True)
    key = "advection" if args.command == "test3" else "burgers"
    rows = run_pde_convergence(
        key,
        args.n_list,
        xi=args.xi,
        seed_policy=args.seed_policy,
        centered=args.perturbation_centered,
        biased_window=args.biased_window,
        epsilon=args.epsilon or weno.DEFAULT_EPSILON,
    )
    _pde_csv(out / f"{args.command}_smooth.csv", rows)
    if not args.skip_profiles:
        step_problem = (
            problems.advection_problem("step")
            if key == "advection"
            else problems.burgers_problem("step")
        )
        profile_xi = 0.25
        profile_ns = (40, 100) if key == "advection" else (20, 100)
        for n in profile_ns:
            field = run_profile(
                step_problem,
                n,
                xi=profile_xi,
                centered=args.perturbation_centered,
                biased_window=args.biased_window,
            )
            fvm.write_snapshot(field, out / f"{args.command}_step_n{n}.txt")
            if args.dump_weights:
                _dump_interface_weights(
                    field, step_problem.bc, out / f"{args.command}_step_n{n}_weights.csv"
                )
    return 0


def _cmd_test5(args):
    out = Path(args.output)
    out.mkdir(parents=True, exist_ok=True)
    specs = [("uniform", n) for n in args.uniform]
    geometric = []
    for pair in args.geometric.split(","):
        if pair:
            m_text, kappa_text = pair.split(":")
            geometric.append(("geometric", int(m_text), float(kappa_text)))
    rows = run_delta(
        specs + geometric,
        epsilon=args.epsilon or weno.DEFAULT_EPSILON,
        biased_window=args.biased_window,
    )
    uniform_rows = [(r.n, r.h_min, r.error, r.order) for r in rows if r.label == "uniform"]
    write_csv(out / "test5_uniform.csv", ["n", "h_min", "E", "o"], uniform_rows)
    geo_rows = [
        (r.label, r.n, r.h_min, r.error) for r in rows if r.label != "uniform"
    ]
    write_csv(out / "test5_geometric.csv", ["grid", "n", "h_min", "E"], geo_rows)
    return 0


def _cmd_test6(args):
    out = Path(args.output)
    out.mkdir(parents=True, exist_ok=True)
    result = run_shuosher(
        args.n,
        args.reference_n,
        xi=args.xi,
        centered=args.perturbation_centered,
        biased_window=args.biased_window,
        convergence_n=tuple(args.convergence),
        output_dir=out,
    )
    write_csv(
        out / "test6_convergence.csv",
        ["n", "E_l1_density"],
        result["convergence"],
        footer=(
            f"min density uniform {result['minima']['uniform']['rho']:.6e}",
            f"min pressure uniform {result['minima']['uniform']['p']:.6e}",
            f"min density perturbed {result['minima']['perturbed']['rho']:.6e}",
            f"min pressure perturbed {result['minima']['perturbed']['p']:.6e}",
        ),
    )
    if args.dump_weights:
        _dump_interface_weights(
            result["uniform"],
            problems.shu_osher_problem().bc,
            out / f"test6_uniform_n{args.n}_weights.csv",
        )
    return 0


def _cmd_bench(args):
    out = Path(args.output)
    out.mkdir(parents=True, exist_ok=True)
    rows, exponent = bench_indicators(args.sizes, args.repetitions)
    write_csv(
        out / "bench_indicators.csv",
        ["R", "seconds_per_call"],
        rows,
        footer=(f"fitted exponent {exponent:.4f}",),
    )
    print(f"indicator cost exponent: {exponent:.4f}")
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    handlers = {
        "test1": _cmd_algebraic,
        "test2": _cmd_algebraic,
        "test3": _cmd_pde,
        "test4": _cmd_pde,
        "test5": _cmd_test5,
        "test6": _cmd_test6,
        "bench": _cmd_bench,
    }
    try:
        return handlers[args.command](args)
    except Exception as error:  # one-line machine-readable failure
        print(f"error: {args.command}: {error}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
