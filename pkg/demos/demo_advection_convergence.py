"""Fifth-order convergence of the full solver on randomly perturbed grids.

Linear advection of a sine wave to T = 1, upwind fluxes, TVD-RK3 with the
time step tied to the spatial resolution so the temporal error stays
subdominant. The grid interfaces fluctuate pseudo-randomly (xi = 0.1) and
the random stream threads through the refinement sequence.
"""

from nuweno.cli import run_pde_convergence

rows = run_pde_convergence("advection", [20, 40, 80, 160, 320])

print(f"{'n':>5} {'h_min':>10} {'L1 error':>12} {'order':>7} {'Linf error':>12} {'order':>7}")
for row in rows:
    o1 = "-" if row.o_l1 is None else f"{row.o_l1:7.3f}"
    oi = "-" if row.o_linf is None else f"{row.o_linf:7.3f}"
    print(
        f"{row.n:>5} {row.h_min:>10.3e} {row.e_l1:>12.3e} {o1:>7} "
        f"{row.e_linf:>12.3e} {oi:>7}"
    )
print("\nexpected: both orders settle at 5")
