"""Mach-3 shock meeting a sine-perturbed density field (1D Euler).

A short, scaled-down run: uniform and randomly perturbed grids at modest
resolution, checked for positivity, with the density extrema printed as the
shock develops the well-known entropy-wave train. The experiment runner's
test6 subcommand performs the full-resolution study with a fine reference.
"""

from nuweno.cli import run_shuosher

result = run_shuosher(128, 1024, convergence_n=(128, 256))

for kind in ("uniform", "perturbed"):
    minima = result["minima"][kind]
    field = result[kind]
    rho = field.cells[:, 0]
    print(
        f"{kind:>9} grid, n = 128: density in [{rho.min():.4f}, {rho.max():.4f}], "
        f"run minima rho = {minima['rho']:.4f}, p = {minima['p']:.4f}"
    )

print("\nself-convergence of the density toward the n = 1024 reference:")
for n, error in result["convergence"]:
    print(f"  n = {n:4d}: L1 distance {error:.4e}")
