"""Cost of the smoothness indicators against the stencil size.

Each indicator is a short sum of cached squared difference quotients, so the
whole set costs a linear number of operations in the stencil size R. The
fitted log-log slope of measured time against R stays well below the
quadratic regime that classical indicator formulas exhibit.
"""

from nuweno.cli import bench_indicators

rows, exponent = bench_indicators([5, 9, 13, 17, 21], repetitions=20_000)

print(f"{'R':>4} {'time per call':>16}")
for size, seconds in rows:
    print(f"{size:>4} {seconds * 1e6:>13.2f} us")
print(f"\nfitted exponent of time vs R: {exponent:.3f} (linear-cost claim: <= 1.3)")
