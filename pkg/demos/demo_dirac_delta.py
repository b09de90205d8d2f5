"""A solution collapsing toward a point mass: uniform versus geometric grids.

The scalar equation u_t + (sin(x) u)_x = 0 compresses everything toward
x = pi; by T = 8 the solution is a spike of height e^8 ~ 3000 on a width of
about 1e-3, with total integral exactly 2 pi. A geometric grid whose cells
shrink toward pi resolves the spike with a tiny fraction of the cells a
uniform grid needs. (Scaled-down resolutions here; the experiment runner's
test5 subcommand reproduces the full study.)
"""

import numpy as np

from nuweno.cli import run_delta
from nuweno.problems import delta_problem

rows = run_delta(
    [
        ("uniform", 199),
        ("uniform", 399),
        ("uniform", 799),
        ("uniform", 1599),
        ("geometric", 49, 1.2),
        ("geometric", 99, 1.1),
    ]
)

print(f"{'grid':>20} {'cells':>6} {'h_min':>10} {'L1 error':>12}")
for row in rows:
    print(f"{row.label:>20} {row.n:>6} {row.h_min:>10.3e} {row.error:>12.4e}")

problem = delta_problem()
peak = problem.exact(np.pi, 8.0)
print(f"\nexact peak height at T = 8: {peak:.1f}; total mass 2 pi = {2 * np.pi:.6f}")
print("coarse uniform grids plateau near O(1) error; the geometric grids beat")
print("uniform grids that spend one to two orders of magnitude more cells")
