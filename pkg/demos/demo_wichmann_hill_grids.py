"""Random-interface grids: the generator, the fluctuation band, seed threading.

Every perturbed grid in this package is driven by the same three-seed
generator, so refinement studies are reproducible run for run. This script
shows the raw draws, the spacing statistics of a perturbed grid, and how the
state threads through a refinement sequence as one uninterrupted stream.
"""

import numpy as np

from nuweno import PAPER_SEEDS, perturbed_grid, wichmann_hill_next

print("First ten draws from the standard seeds (874, 1421, 957):")
state = PAPER_SEEDS
for k in range(10):
    value, state = wichmann_hill_next(state)
    print(f"  r_{k + 1} = {value:.12f}")

print("\nPerturbed grid on [-1, 1], n = 40 cells, fluctuation xi = 0.25:")
grid, _ = perturbed_grid(40, 0.25, PAPER_SEEDS)
ratio = grid.widths * 40 / 2.0
print(f"  widths / uniform width: min {ratio.min():.4f}, max {ratio.max():.4f}")
print(f"  interior band (1 - 2 xi, 1 + 2 xi) = (0.5, 1.5)")
print(f"  endpoints pinned exactly: x_0 = {grid.interfaces[0]}, x_n = {grid.interfaces[-1]}")

print("\nCentered variant of the fluctuation (band [-xi, xi)):")
centered, _ = perturbed_grid(40, 0.25, PAPER_SEEDS, centered=True)
shift = (centered.interfaces - np.linspace(-1, 1, 41))[1:-1] * 40 / 2.0
print(f"  interior interface shifts: min {shift.min():.4f}, max {shift.max():.4f}")

print("\nSeed threading across a refinement sequence (n = 20, 40, 80):")
state = PAPER_SEEDS
consumed = 0
for n in (20, 40, 80):
    grid, state = perturbed_grid(n, 0.1, state)
    consumed += n - 1
    print(f"  built n = {n:3d}: total draws consumed = {consumed}")
probe, _ = wichmann_hill_next(state)
print(f"  next draw after the sequence: {probe:.12f}")
