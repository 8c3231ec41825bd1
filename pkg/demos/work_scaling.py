"""Compare total update work with recomputing all distances after every deletion.

Run: python3 demos/work_scaling.py   (about a minute)
The full three-size run lives behind `decoracle --bench`.
"""
from decoracle.bench import bench_suite

rep = bench_suite([32, 64, 128], [0.3], seed=0)
print(f"{'n':>5} {'m':>6} {'oracle work':>12} {'recompute':>12} {'ratio':>6} {'sec':>6}")
for c in rep.cells:
    print(f"{c.n:5d} {c.m:6d} {c.oracle_work:12d} {c.baseline_work:12d} {c.ratio:6.2f} {c.seconds:6.1f}")

# Slopes on log-log axes: the recompute baseline grows roughly like n^5 on dense
# graphs (m ~ n^2 deletions, each an n*m sweep), and the oracle's slope is lower,
# which is where the ratio keeps widening as n grows.
print(f"fitted exponent: oracle {rep.exponents[0.3]:.2f}, recompute {rep.baseline_exponents[0.3]:.2f}")
