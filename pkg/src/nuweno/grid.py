"""Grid construction: test stencils, perturbed quasi-uniform grids, geometric grids.

Everything here is deterministic. The pseudo-random perturbation uses the
Wichmann-Hill generator with explicitly threaded state, so a sequence of
refinements reproduces one uninterrupted random stream run-for-run.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .reconstruct import Framework

WH_MULTIPLIERS = (171, 172, 170)
WH_MODULI = (30269, 30307, 30323)


@dataclass(frozen=True)
class WichmannHillState:
    """Seed triple of the Wichmann-Hill generator."""

    s1: int
    s2: int
    s3: int

    def __post_init__(self):
        for value, modulus in zip((self.s1, self.s2, self.s3), WH_MODULI):
            if not 0 <= value < modulus:
                raise ValueError(f"seed {value} outside [0, {modulus})")


#: Starting seeds used by every experiment in this package.
PAPER_SEEDS = WichmannHillState(874, 1421, 957)


def wichmann_hill_next(state):
    """Advance the generator once.

    Returns ``(value, new_state)`` where the three seeds follow their modular
    recurrences and the value is the mod-1 sum of the updated seeds scaled by
    their moduli. Total on valid states; (0, 0, 0) is a fixed point.
    """
    s1 = (WH_MULTIPLIERS[0] * state.s1) % WH_MODULI[0]
    s2 = (WH_MULTIPLIERS[1] * state.s2) % WH_MODULI[1]
    s3 = (WH_MULTIPLIERS[2] * state.s3) % WH_MODULI[2]
    value = (s1 / WH_MODULI[0] + s2 / WH_MODULI[1] + s3 / WH_MODULI[2]) % 1.0
    return value, WichmannHillState(s1, s2, s3)


@dataclass(frozen=True)
class CellGrid:
    """Strictly increasing cell interfaces of a finite-volume partition."""

    interfaces: np.ndarray

    def __post_init__(self):
        xi = np.ascontiguousarray(self.interfaces, dtype=float)
        if xi.ndim != 1 or xi.size < 2:
            raise ValueError("need a 1D array of at least two interfaces")
        if not np.all(np.isfinite(xi)):
            raise ValueError("interfaces must be finite")
        if not np.all(np.diff(xi) > 0.0):
            raise ValueError("interfaces must be strictly increasing")
        xi.setflags(write=False)
        object.__setattr__(self, "interfaces", xi)

    @property
    def n_cells(self) -> int:
        return self.interfaces.size - 1

    @cached_property
    def centers(self) -> np.ndarray:
        x = 0.5 * (self.interfaces[:-1] + self.interfaces[1:])
        x.setflags(write=False)
        return x

    @cached_property
    def widths(self) -> np.ndarray:
        dx = np.diff(self.interfaces)
        dx.setflags(write=False)
        return dx


def perturbed_grid(n, xi, state, *, centered=False):
    """Quasi-uniform grid on [-1, 1] with pseudo-random interface fluctuation.

    Interior interfaces sit at ``-1 + 2j/n + (2/n) R(j)`` where
    ``R(j) = -xi - 2 xi r_j`` and ``r_j`` is the j-th Wichmann-Hill draw; the
    endpoints are pinned at -1 and 1 exactly. Exactly ``n - 1`` draws are
    consumed (also when ``xi == 0``), and the post-draw state is returned, so
    threading the state through a refinement sequence continues one stream.

    ``centered=True`` replaces the band [-3 xi, -xi] of the printed recipe by
    the symmetric variant ``R(j) = -xi + 2 xi r_j``, for sensitivity studies.

    Requires ``n >= 2`` and ``0 <= xi < 1/2``; consecutive fluctuations differ
    by less than ``2 xi``, which keeps every spacing positive.
    """
    if n < 2:
        raise ValueError(f"need n >= 2 cells, got {n}")
    if not 0.0 <= xi < 0.5:
        raise ValueError(f"fluctuation xi must satisfy 0 <= xi < 1/2, got {xi}")
    points = np.empty(n + 1)
    points[0] = -1.0
    points[n] = 1.0
    for j in range(1, n):
        r, state = wichmann_hill_next(state)
        fluct = -xi + 2.0 * xi * r if centered else -xi - 2.0 * xi * r
        points[j] = -1.0 + 2.0 * j / n + (2.0 / n) * fluct
    return CellGrid(points), state


def geometric_delta_grid(m, kappa, *, allow_uniform=False):
    """Grid of 2m cells on [0, 2pi] clustering geometrically toward pi.

    On [0, pi] consecutive spacings shrink by the factor ``1/kappa`` (each
    cell is ``kappa`` times wider than its right neighbour), with the first
    width fixed by ``sum of the m spacings = pi``; the right half mirrors the
    left, interface by interface, so ``x_{m+j} + x_{m-j} = 2 pi`` exactly.

    ``kappa`` must exceed 1; ``kappa == 1`` is accepted only with
    ``allow_uniform=True`` and produces the exactly uniform grid.
    """
    if m < 1:
        raise ValueError(f"need m >= 1 cells per half, got {m}")
    if kappa == 1.0 and allow_uniform:
        return CellGrid(np.linspace(0.0, 2.0 * np.pi, 2 * m + 1))
    if kappa <= 1.0:
        raise ValueError(f"grid ratio kappa must exceed 1, got {kappa}")
    ratios = kappa ** -np.arange(m)
    first = np.pi / ratios.sum()
    left = np.concatenate([[0.0], first * np.cumsum(ratios)])
    left[m] = np.pi
    points = np.concatenate([left, 2.0 * np.pi - left[m - 1 :: -1]])
    return CellGrid(points)


@dataclass(frozen=True)
class StencilGeometry:
    """Normalized stencil: coordinates c with nodes/interfaces at z + c_i h.

    ``c_star`` is the normalized reconstruction abscissa (target point at
    ``z + c_star h``). Scalars may be floats or any richer real type; only
    ``c`` and ``c_star`` ever enter reconstruction arithmetic.
    """

    z: object
    h: object
    c: tuple
    c_star: object

    def __post_init__(self):
        object.__setattr__(self, "c", tuple(self.c))
        if len(self.c) < 2:
            raise ValueError("need at least two stencil coordinates")
        for a, b in zip(self.c, self.c[1:]):
            if not b > a:
                raise ValueError("stencil coordinates must be strictly increasing")
        if not self.h > 0:
            raise ValueError("stencil scale h must be positive")

    def nodes(self) -> tuple:
        """Absolute positions z + c_i h."""
        return tuple(self.z + ci * self.h for ci in self.c)

    @property
    def x_star(self):
        return self.z + self.c_star * self.h


# Stencil coordinates of the two algebraic convergence tests, kept as decimal
# text so the embedded constants can be diffed column by column.
_ALGEBRAIC_TABLE = """\
# i   test1-pv   test1-ca   test2-pv   test2-ca
0    -3.5411    -3.5451    -1.5411    -3.5451
1    -2.8706    -2.9810    -0.9907    -2.9810
2    -2.1411    -2.3102     0.0000    -2.3102
3    -1.7503    -2.1178     0.6792    -2.1178
4    -0.9907    -1.4574     1.7413    -0.1231
5    -0.2145    -0.8571     2.5614     0.0000
6     0.6792     0.1245     3.1410     0.8073
7     1.3204     0.8073     3.4124     1.1265
8     1.7413     1.1265     3.7654     2.0578
9     2.8614     2.0578     4.0119     2.7109
10    3.5410     2.7109     4.3412     3.1543
11    4.0034     3.1543     -          3.5418
"""

_RECONSTRUCTION_ABSCISSA = {
    ("test1", Framework.POINT_VALUES): "0",
    ("test1", Framework.CELL_AVERAGES): "0",
    ("test2", Framework.POINT_VALUES): "2.3251",
    ("test2", Framework.CELL_AVERAGES): "0.5041",
}


def _parse_algebraic_table(convert):
    columns = {key: [] for key in ("test1-pv", "test1-ca", "test2-pv", "test2-ca")}
    names = list(columns)
    for line in _ALGEBRAIC_TABLE.splitlines():
        if line.startswith("#"):
            continue
        cells = line.split()[1:]
        for name, cell in zip(names, cells):
            if cell != "-":
                columns[name].append(convert(cell))
    return columns


_ALGEBRAIC_COLUMNS = _parse_algebraic_table(float)


def algebraic_test_stencil(test, framework, convert=float):
    """Hard-coded stencil of one algebraic convergence test.

    ``test`` is ``"test1"`` (smooth) or ``"test2"`` (discontinuous);
    ``framework`` selects the point-value or cell-average column. ``convert``
    maps the embedded decimal literals into the scalar type of choice (pass
    ``mpmath.mpf`` for the high-precision backend). The anchor is z = 0 and
    the scale defaults to h = 1; refinement studies rescale h themselves.
    """
    if test not in ("test1", "test2"):
        raise ValueError(f"unknown algebraic test {test!r}")
    framework = Framework(framework)
    suffix = "pv" if framework is Framework.POINT_VALUES else "ca"
    key = f"{test}-{suffix}"
    if convert is float:
        column = _ALGEBRAIC_COLUMNS[key]
    else:
        column = _parse_algebraic_table(convert)[key]
    c_star = convert(_RECONSTRUCTION_ABSCISSA[(test, framework)])
    return StencilGeometry(z=convert("0"), h=convert("1"), c=tuple(column), c_star=c_star)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def format_grid(grid) -> str:
    """Two-column text form: index and interface coordinate, full precision."""
    lines = [f"{i} {x:.16e}" for i, x in enumerate(grid.interfaces)]
    return "\n".join(lines) + "\n"


def write_grid(grid, path) -> None:
    with open(path, "w") as handle:
        handle.write(format_grid(grid))


def read_grid(path) -> CellGrid:
    points = []
    with open(path) as handle:
        for line in handle:
            if line.strip():
                points.append(float(line.split()[1]))
    return CellGrid(np.asarray(points))
