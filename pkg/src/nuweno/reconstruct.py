"""Linear reconstruction on nonuniform stencils.

Lagrange interpolation from point values, conservative reconstruction from
cell averages (built by interpolating the primitive function), and the
leading-term functionals that feed the nonlinear weights.

All arithmetic happens in normalized stencil coordinates ``c``; the affine
map ``x = z + c*h`` never enters a computation, so coefficient vectors built
here can be cached and reused for every refinement level of a fixed stencil
shape. Routines accept any scalar type supporting field operations and
comparisons (float, np.float64, mpmath.mpf).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum


class Framework(Enum):
    """How stencil samples are interpreted."""

    POINT_VALUES = "point-values"
    CELL_AVERAGES = "cell-averages"


@dataclass(frozen=True)
class SampleData:
    """Samples attached to a stencil: nodal values or cell averages.

    For ``POINT_VALUES`` there is one value per stencil coordinate; for
    ``CELL_AVERAGES`` the coordinates are the cell interfaces, so there is
    one value less than coordinates.
    """

    framework: Framework
    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))


def _check_increasing(c, minimum=2):
    if len(c) < minimum:
        raise ValueError(f"need at least {minimum} stencil coordinates, got {len(c)}")
    for a, b in zip(c, c[1:]):
        if not b > a:
            raise ValueError("stencil coordinates must be strictly increasing")


def _dot(w, v):
    acc = w[0] * v[0]
    for wi, vi in zip(w[1:], v[1:]):
        acc = acc + wi * vi
    return acc


# ---------------------------------------------------------------------------
# point-value framework
# ---------------------------------------------------------------------------


def point_eval_coefficients(c, c_star):
    """Weights ``w`` with ``p(c_star) = sum_i w_i f_i``.

    ``p`` is the unique polynomial of degree <= R-1 interpolating the nodal
    values at the R coordinates ``c``; each weight is the Lagrange basis
    product evaluated at ``c_star``. Build cost is quadratic in R, after
    which every evaluation on new data is a single dot product.
    """
    _check_increasing(c)
    n = len(c)
    out = []
    for i in range(n):
        w = 1.0
        for j in range(n):
            if j != i:
                w = w * (c_star - c[j]) / (c[i] - c[j])
        out.append(w)
    return out


def lagrange_point_eval(c, f, c_star):
    """Evaluate at ``c_star`` the interpolant of point values ``f`` on ``c``."""
    if len(f) != len(c):
        raise ValueError("need one sample per stencil coordinate")
    return _dot(point_eval_coefficients(c, c_star), f)


def barycentric_weights(c):
    """``w_i = 1 / prod_{j != i} (c_i - c_j)``."""
    _check_increasing(c)
    n = len(c)
    out = []
    for i in range(n):
        w = 1.0
        for j in range(n):
            if j != i:
                w = w * (c[i] - c[j])
        out.append(1.0 / w)
    return out


def undivided_difference(c, f):
    """Difference quotient ``f[c_0, ..., c_{R-1}]`` over stencil coordinates.

    Computed by the recursive definition with denominators ``c_{i+j} - c_i``;
    equals the leading coefficient of the interpolating polynomial in the
    normalized coordinate.
    """
    if len(c) < 1:
        raise ValueError("need at least one coordinate")
    if len(f) != len(c):
        raise ValueError("need one sample per stencil coordinate")
    if len(c) > 1:
        _check_increasing(c)
    work = list(f)
    n = len(c)
    for j in range(1, n):
        for i in range(n - j):
            work[i] = (work[i + 1] - work[i]) / (c[i + j] - c[i])
    return work[0]


def point_leading_coefficients(c):
    """Weights giving ``(R-1)!`` times the interpolant's leading coefficient."""
    fact = math.factorial(len(c) - 1)
    return [fact * w for w in barycentric_weights(c)]


# ---------------------------------------------------------------------------
# cell-average framework
# ---------------------------------------------------------------------------


def _basis_derivatives(c, x):
    """Derivatives ``l_j'(x)`` of the Lagrange basis on nodes ``c``."""
    n = len(c)
    out = []
    for l in range(n):
        denom = 1.0
        for k in range(n):
            if k != l:
                denom = denom * (c[l] - c[k])
        acc = 0.0
        for m in range(n):
            if m == l:
                continue
            prod = 1.0
            for k in range(n):
                if k != l and k != m:
                    prod = prod * (x - c[k])
            acc = acc + prod
        out.append(acc / denom)
    return out


def cell_eval_coefficients(c, c_star):
    """Weights ``w`` with ``p(c_star) = sum_j w_j fbar_j``.

    ``c`` holds the R+1 cell interfaces. ``p`` is the unique polynomial of
    degree <= R-1 whose average over ``[c_j, c_{j+1}]`` equals ``fbar_j`` for
    every cell; it is recovered as the derivative of the degree-R interpolant
    of the primitive. The basis polynomial attached to ``fbar_j`` is
    ``(c_{j+1}-c_j) * sum_{l>j} l_l'``, where ``l_l`` is the Lagrange basis on
    the interfaces, hence the suffix accumulation below. Build cost is cubic
    in R; application is a dot product.
    """
    _check_increasing(c)
    n_cells = len(c) - 1
    dl = _basis_derivatives(c, c_star)
    out = []
    suffix = 0.0
    for j in range(n_cells - 1, -1, -1):
        suffix = suffix + dl[j + 1]
        out.append((c[j + 1] - c[j]) * suffix)
    out.reverse()
    return out


def lagrange_cell_eval(c, fbar, c_star):
    """Evaluate at ``c_star`` the conservative reconstruction of ``fbar``."""
    if len(fbar) != len(c) - 1:
        raise ValueError("need one average per cell (len(c) - 1 values)")
    return _dot(cell_eval_coefficients(c, c_star), fbar)


def cell_leading_coefficients(c):
    """Per-average weights giving ``(R-1)!`` times the leading coefficient.

    The reconstruction polynomial is the derivative of the interpolant of the
    primitive ``V`` (with ``V_0 = 0`` and increments ``(c_{j+1}-c_j) fbar_j``),
    so its leading coefficient times ``(R-1)!`` equals ``R!`` times the
    divided difference ``V[c_0, ..., c_R]``; Abel summation turns the
    barycentric form of that difference into weights on the averages.
    """
    _check_increasing(c)
    n_cells = len(c) - 1
    w = barycentric_weights(c)
    fact = math.factorial(n_cells)
    out = []
    suffix = 0.0
    for j in range(n_cells - 1, -1, -1):
        suffix = suffix + w[j + 1]
        out.append(fact * (c[j + 1] - c[j]) * suffix)
    out.reverse()
    return out


def cell_leading_term(c, fbar):
    """``(R-1)!`` times the leading coefficient of the cell reconstruction.

    The caller squares this to obtain the global smoothness measure for the
    cell-average framework.
    """
    if len(fbar) != len(c) - 1:
        raise ValueError("need one average per cell (len(c) - 1 values)")
    return _dot(cell_leading_coefficients(c), fbar)
