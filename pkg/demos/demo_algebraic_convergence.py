"""Single-stencil convergence tables: smooth and discontinuous data.

The reconstruction is exercised directly on the two hard-coded nonuniform
test stencils, halving the scale h per level. In binary64 the smooth
twelve-node stencil bottoms out on the roundoff floor almost immediately, so
the desk-scale run restricts it to an admissible five-node window; pass
--high-precision to reproduce the full tables on the 100-digit backend
instead (orders 12 and 11 for the smooth data, 6 for the discontinuous).
"""

import sys

from nuweno.cli import run_algebraic
from nuweno.reconstruct import Framework


def show(title, records, truncated):
    print(f"\n{title}")
    print(f"  {'n':>3} {'E':>14} {'order':>10}")
    for record in records:
        order = "-" if record.order is None else f"{float(record.order):10.4f}"
        print(f"  {record.n:>3} {float(record.error):14.4e} {order}")
    if truncated is not None:
        print(f"  (stopped at level {truncated}: binary64 roundoff floor)")


high_precision = "--high-precision" in sys.argv

if high_precision:
    for test, framework, label in (
        ("test1", Framework.POINT_VALUES, "smooth, point values (order -> 12)"),
        ("test1", Framework.CELL_AVERAGES, "smooth, cell averages (order -> 11)"),
        ("test2", Framework.POINT_VALUES, "discontinuous, point values (order -> 6)"),
        ("test2", Framework.CELL_AVERAGES, "discontinuous, cell averages (order -> 6)"),
    ):
        records, truncated = run_algebraic(test, framework, 12, backend="mpmath")
        show(label, records, truncated)
else:
    records, truncated = run_algebraic(
        "test1", Framework.POINT_VALUES, 20, stencil_size=5
    )
    show("smooth data, five-node window (order -> 5)", records, truncated)
    records, truncated = run_algebraic("test2", Framework.POINT_VALUES, 20)
    show("discontinuous data, eleven nodes (order -> 6)", records, truncated)
    print("\nrun with --high-precision for the full-stencil tables")
