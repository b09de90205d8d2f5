"""Concrete 1D conservation-law test problems.

Each constructor returns a :class:`ProblemDef` bundling flux, boundary
treatment, initial data, the exact solution where one exists in closed form,
and the time-step policy the experiment uses. Cell averages are initialized
by 5-point Gauss-Legendre quadrature per cell, splitting any cell that
contains a declared jump of the data.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .fvm import (
    BoundaryKind,
    BoundarySpec,
    CflSpeed,
    FluxKind,
    FluxSpec,
    InterfaceReconstructor,
    PowerLaw,
    StateField,
    integrate,
)

GAMMA = 1.4

_GAUSS_NODES, _GAUSS_WEIGHTS = np.polynomial.legendre.leggauss(5)


@dataclass(frozen=True)
class ProblemDef:
    """A conservation-law experiment with everything needed to run it."""

    name: str
    flux_spec: FluxSpec
    bc: BoundarySpec
    domain: tuple
    initial: Callable
    final_time: float
    dt_policy: object
    rk_order: int = 3
    n_components: int = 1
    exact: Callable | None = None
    exact_cell_average: Callable | None = None
    jumps_at: Callable | None = None


# ---------------------------------------------------------------------------
# quadrature of cell averages
# ---------------------------------------------------------------------------


def _gauss_integrals(func, a, b):
    """Integral of func over each [a_i, b_i] by 5-point Gauss-Legendre."""
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    x = mid[:, None] + half[:, None] * _GAUSS_NODES[None, :]
    values = np.asarray(func(x.ravel()), dtype=float)
    if values.ndim == 1:
        values = values.reshape(x.shape)
        return half * (values @ _GAUSS_WEIGHTS)
    values = values.reshape(x.shape + (-1,))
    return half[:, None] * np.einsum("ijk,j->ik", values, _GAUSS_WEIGHTS)


def _averages_with_jumps(func, grid, jumps):
    left = grid.interfaces[:-1]
    right = grid.interfaces[1:]
    integrals = _gauss_integrals(func, left, right)
    for jump in jumps or ():
        inside = (left < jump) & (jump < right)
        for idx in np.nonzero(inside)[0]:
            a, b = left[idx], right[idx]
            split = _gauss_integrals(func, np.array([a, jump]), np.array([jump, b]))
            integrals[idx] = split.sum(axis=0)
    if integrals.ndim == 1:
        return integrals / grid.widths
    return integrals / grid.widths[:, None]


def init_cell_averages(problem, grid) -> StateField:
    """Initial cell averages, exact to quadrature order for piecewise-smooth data."""
    jumps = problem.jumps_at(0.0) if problem.jumps_at is not None else ()
    return StateField(grid, _averages_with_jumps(problem.initial, grid, jumps))


def error_norms(field, problem, t):
    """(L1, Linf) distance of the field from the exact cell averages at time t.

    The L1 norm is width-weighted; Linf is the largest per-cell difference.
    Exact averages come from the problem's closed-form average when it has
    one, otherwise from the same Gauss quadrature used for initialization.
    """
    if problem.exact is None and problem.exact_cell_average is None:
        raise ValueError(f"problem {problem.name} has no exact solution")
    grid = field.grid
    if problem.exact_cell_average is not None:
        exact = problem.exact_cell_average(grid.interfaces[:-1], grid.interfaces[1:], t)
    else:
        jumps = problem.jumps_at(t) if problem.jumps_at is not None else ()
        exact = _averages_with_jumps(lambda x: problem.exact(x, t), grid, jumps)
    diff = np.abs(np.asarray(exact) - field.cells)
    return float(np.sum(grid.widths * diff)), float(diff.max())


def solve(problem, grid, *, rk_order=None, dt_policy=None, step_callback=None,
          biased_window=False):
    """Initialize on ``grid`` and integrate to the problem's final time."""
    field = init_cell_averages(problem, grid)
    recon = InterfaceReconstructor(grid, problem.bc, biased_window=biased_window)
    final, _, steps = integrate(
        field,
        problem.flux_spec,
        problem.bc,
        t_end=problem.final_time,
        dt_policy=dt_policy or problem.dt_policy,
        rk_order=rk_order or problem.rk_order,
        step_callback=step_callback,
        reconstructor=recon,
    )
    return final, steps


# ---------------------------------------------------------------------------
# linear advection (smooth and step data)
# ---------------------------------------------------------------------------


def _wrap_unit(y):
    """Map positions into the periodic cell [-1, 1)."""
    return (np.asarray(y) + 1.0) % 2.0 - 1.0


def _sine_initial(x):
    return 0.25 + 0.5 * np.sin(np.pi * np.asarray(x))


def _step_initial(x):
    return np.where(np.asarray(x) <= 0.0, -0.25, 1.0)


def advection_problem(variant="smooth") -> ProblemDef:
    """u_t + u_x = 0 on [-1, 1], periodic, upwind flux.

    ``smooth``: sine data to T = 1; ``step``: jump data to T = 1.5 with the
    translated (periodically wrapped) step as exact solution.
    """
    spec = FluxSpec(
        flux=lambda u: u,
        max_wavespeed=lambda cells: 1.0,
        kind=FluxKind.UPWIND_LEFT,
    )
    bc = BoundarySpec(BoundaryKind.PERIODIC)
    if variant == "smooth":

        def exact(x, t):
            return 0.25 + 0.5 * np.sin(np.pi * (np.asarray(x) - t))

        def exact_average(a, b, t):
            antideriv = lambda x: 0.25 * x - 0.5 * np.cos(np.pi * (x - t)) / np.pi
            return (antideriv(b) - antideriv(a)) / (b - a)

        return ProblemDef(
            name="advection-smooth",
            flux_spec=spec,
            bc=bc,
            domain=(-1.0, 1.0),
            initial=_sine_initial,
            final_time=1.0,
            dt_policy=PowerLaw(exponent=5.0 / 3.0, factor=1.0),
            exact=exact,
            exact_cell_average=exact_average,
        )
    if variant == "step":

        def exact(x, t):
            return _step_initial(_wrap_unit(np.asarray(x) - t))

        def jumps_at(t):
            # the data jump and the wrap seam, both advected
            points = _wrap_unit(np.array([0.0, -1.0]) + t)
            return tuple(p for p in points if -1.0 < p < 1.0)

        return ProblemDef(
            name="advection-step",
            flux_spec=spec,
            bc=bc,
            domain=(-1.0, 1.0),
            initial=_step_initial,
            final_time=1.5,
            dt_policy=CflSpeed(cfl=0.9, alpha=1.0),
            exact=exact,
            jumps_at=jumps_at,
        )
    raise ValueError(f"unknown advection variant {variant!r}")


# ---------------------------------------------------------------------------
# Burgers equation
# ---------------------------------------------------------------------------


#: First characteristic crossing of the sine datum: 1 / max(-u0') = 2 / pi.
BURGERS_SHOCK_TIME = 2.0 / np.pi


def _burgers_exact(x, t):
    """Pre-shock solution of u = u0(x - u t) for the sine datum.

    Vectorized Newton iteration to 1e-14 with a bisection fallback; raises
    for queries at or past shock formation, where the characteristic
    equation stops being single-valued.
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if t >= BURGERS_SHOCK_TIME:
        raise RuntimeError(
            f"characteristics cross before t = {t} (shock forms at "
            f"t = {BURGERS_SHOCK_TIME:.6f}); the smooth profile is undefined"
        )
    if t == 0.0:
        return _sine_initial(x)
    u = _sine_initial(x)
    converged = False
    for _ in range(50):
        residual = u - _sine_initial(x - u * t)
        if np.max(np.abs(residual)) < 1e-14:
            converged = True
            break
        slope = 1.0 + 0.5 * np.pi * t * np.cos(np.pi * (x - u * t))
        u = u - residual / slope
    if not converged:
        lo = np.full_like(x, -0.251)
        hi = np.full_like(x, 0.751)
        for _ in range(100):
            mid = 0.5 * (lo + hi)
            low_side = mid - _sine_initial(x - mid * t) < 0.0
            lo = np.where(low_side, mid, lo)
            hi = np.where(low_side, hi, mid)
        u = 0.5 * (lo + hi)
        residual = u - _sine_initial(x - u * t)
        if np.max(np.abs(residual)) > 1e-12:
            worst = int(np.argmax(np.abs(residual)))
            raise RuntimeError(
                f"characteristic solve failed at x = {x[worst]}, t = {t} "
                "(post-shock query?)"
            )
    return u


def burgers_problem(variant="smooth") -> ProblemDef:
    """u_t + (u^2/2)_x = 0 on [-1, 1], periodic, Lax-Friedrichs splitting.

    ``smooth``: sine data to T = 0.3 (before shock formation), exact solution
    by characteristics; ``step``: jump data to T = 1, profiles only.
    """
    spec = FluxSpec(
        flux=lambda u: 0.5 * u * u,
        max_wavespeed=lambda cells: float(np.max(np.abs(cells))),
        kind=FluxKind.LOCAL_LAX_FRIEDRICHS,
        local_wavespeed=lambda x, ul, ur: np.maximum(np.abs(ul), np.abs(ur)),
    )
    bc = BoundarySpec(BoundaryKind.PERIODIC)
    if variant == "smooth":
        # same power-law step size as the advection study, scaled by the
        # initial wave speed so the CFL margin matches
        factor = 1.0 / 0.75
        return ProblemDef(
            name="burgers-smooth",
            flux_spec=spec,
            bc=bc,
            domain=(-1.0, 1.0),
            initial=_sine_initial,
            final_time=0.3,
            dt_policy=PowerLaw(exponent=5.0 / 3.0, factor=factor),
            exact=lambda x, t: _burgers_exact(x, t),
        )
    if variant == "step":
        return ProblemDef(
            name="burgers-step",
            flux_spec=spec,
            bc=bc,
            domain=(-1.0, 1.0),
            initial=_step_initial,
            final_time=1.0,
            dt_policy=CflSpeed(cfl=0.9, alpha=1.0),
            jumps_at=lambda t: (0.0,) if t == 0.0 else (),
        )
    raise ValueError(f"unknown burgers variant {variant!r}")


# ---------------------------------------------------------------------------
# scalar equation with a solution concentrating into a spike
# ---------------------------------------------------------------------------


def delta_problem() -> ProblemDef:
    """u_t + (sin(x) u)_x = 0 on [0, 2pi], periodic, u(x, 0) = 1, T = 8.

    The characteristics compress everything toward x = pi, so the solution
    approaches a point mass of total integral 2 pi while decaying everywhere
    else. The flux is position-dependent; the wave-speed bound is 1.
    """

    def flux(x, u):
        return np.sin(x) * u

    def exact(x, t):
        x = np.asarray(x)
        return 2.0 * np.exp(t) / (1.0 - np.cos(x) + (1.0 + np.cos(x)) * np.exp(2.0 * t))

    def antiderivative(x, t):
        # continuous on [0, 2pi]; atan2 glues the branches of
        # 2 atan(exp(-t) tan(x/2)) across the pole at x = pi
        x = np.asarray(x)
        return 2.0 * np.arctan2(np.exp(-t) * np.sin(0.5 * x), np.cos(0.5 * x))

    def exact_average(a, b, t):
        return (antiderivative(b, t) - antiderivative(a, t)) / (b - a)

    spec = FluxSpec(
        flux=flux,
        max_wavespeed=lambda cells: 1.0,
        kind=FluxKind.LOCAL_LAX_FRIEDRICHS,
        x_dependent=True,
        local_wavespeed=lambda x, ul, ur: np.abs(np.sin(x)),
    )
    return ProblemDef(
        name="dirac-delta",
        flux_spec=spec,
        bc=BoundarySpec(BoundaryKind.PERIODIC),
        domain=(0.0, 2.0 * np.pi),
        initial=lambda x: np.ones_like(np.asarray(x, dtype=float)),
        final_time=8.0,
        dt_policy=CflSpeed(cfl=0.8, alpha=1.0),
        rk_order=2,
        exact=exact,
        exact_cell_average=exact_average,
    )


# ---------------------------------------------------------------------------
# 1D Euler equations and the shock / sine-wave interaction
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EulerState:
    """Conserved state (density, momentum, total energy) with positivity checks."""

    rho: float
    mom: float
    E: float

    def __post_init__(self):
        if not self.rho > 0:
            raise ValueError(f"nonpositive density {self.rho}")
        if not self.pressure > 0:
            raise ValueError(f"nonpositive pressure {self.pressure}")

    @property
    def pressure(self) -> float:
        return (GAMMA - 1.0) * (self.E - 0.5 * self.mom**2 / self.rho)

    def as_array(self) -> np.ndarray:
        return np.array([self.rho, self.mom, self.E])


def euler_primitive_to_conserved(rho, v, p):
    """(rho, v, p) -> stacked (rho, rho v, E) with E = p/(gamma-1) + rho v^2 / 2."""
    rho = np.asarray(rho, dtype=float)
    v = np.asarray(v, dtype=float)
    p = np.asarray(p, dtype=float)
    energy = p / (GAMMA - 1.0) + 0.5 * rho * v * v
    return np.stack([rho, rho * v, energy], axis=-1)


def euler_pressure(u):
    u = np.asarray(u)
    return (GAMMA - 1.0) * (u[..., 2] - 0.5 * u[..., 1] ** 2 / u[..., 0])


def euler_flux(u):
    u = np.asarray(u)
    rho = u[..., 0]
    v = u[..., 1] / rho
    p = euler_pressure(u)
    return np.stack([u[..., 1], p + u[..., 1] * v, v * (u[..., 2] + p)], axis=-1)


def euler_max_wavespeed(u):
    """max(|v| + c) over the field, with sound speed c = sqrt(gamma p / rho)."""
    u = np.asarray(u)
    rho = u[..., 0]
    v = u[..., 1] / rho
    p = euler_pressure(u)
    return float(np.max(np.abs(v) + np.sqrt(GAMMA * p / rho)))


def _euler_signal_speed(u):
    u = np.asarray(u)
    rho = u[..., 0]
    v = u[..., 1] / rho
    p = euler_pressure(u)
    return np.abs(v) + np.sqrt(GAMMA * p / rho)


def euler_local_wavespeed(x, u_left, u_right):
    """Per-interface bound: the larger |v| + c of the two adjacent cells."""
    return np.maximum(_euler_signal_speed(u_left), _euler_signal_speed(u_right))


def shu_osher_problem() -> ProblemDef:
    """Mach-3 shock hitting a sine-perturbed density field, Euler on (-5, 5).

    Left inflow fixed at the shocked state, right outflow by extrapolation;
    T = 1.8. There is no closed-form solution; runs are compared against a
    fine-grid reference.
    """
    left = euler_primitive_to_conserved(27.0 / 7.0, 4.0 * np.sqrt(35.0) / 9.0, 31.0 / 3.0)

    def initial(x):
        x = np.asarray(x, dtype=float)
        rho = np.where(x <= -4.0, 27.0 / 7.0, 1.0 + 0.2 * np.sin(5.0 * x))
        v = np.where(x <= -4.0, 4.0 * np.sqrt(35.0) / 9.0, 0.0)
        p = np.where(x <= -4.0, 31.0 / 3.0, 1.0)
        return euler_primitive_to_conserved(rho, v, p)

    spec = FluxSpec(
        flux=euler_flux,
        max_wavespeed=euler_max_wavespeed,
        kind=FluxKind.LOCAL_LAX_FRIEDRICHS,
        local_wavespeed=euler_local_wavespeed,
    )
    return ProblemDef(
        name="shu-osher",
        flux_spec=spec,
        bc=BoundarySpec(BoundaryKind.INFLOW_OUTFLOW, left_state=left),
        domain=(-5.0, 5.0),
        initial=initial,
        final_time=1.8,
        dt_policy=CflSpeed(cfl=0.5, alpha=None),
        n_components=3,
        jumps_at=lambda t: (-4.0,) if t == 0.0 else (),
    )
