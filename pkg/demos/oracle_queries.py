"""Answer distance queries while a random graph is torn down.

Run: python3 demos/oracle_queries.py
"""
from collections import Counter

import numpy as np

from decoracle import DynamicGraph, Oracle, OracleConfig, gnp_graph, random_deletion_order
from decoracle.verify import all_pairs, stretch_bound

g = gnp_graph(80, 0.08, seed=11)
# A small sampling constant and a unit additive scale keep Q sparse, so the
# light trees and pivots carry part of the load instead of the heaps alone.
cfg = OracleConfig(epsilon=0.5, c=1.0, zeta_override=1, seed=11)
o = Oracle(g, cfg)
print(f"n={g.n} m={g.m_initial} |Q|={len(o.q_list)} light trees={len(o.trees)} "
      f"beta={o.beta} long cutoff={o.long_cutoff:.1f}")

# Delete half the edges, then compare every answer with the true distance.
order = random_deletion_order(g.copy(), seed=11)
for u, v in order[: len(order) // 2]:
    o.delete(u, v)
dist = all_pairs(g)

rng = np.random.default_rng(0)
pairs = rng.integers(0, g.n, size=(400, 2))
ratios, kinds, sound = [], Counter(), True
for s, t in pairs:
    ans = o.query(int(s), int(t))
    d = dist[s, t]
    sound &= ans.estimate >= d
    kinds[ans.witness] += 1
    if np.isfinite(d) and d > 0:
        ratios.append(ans.estimate / d)
        assert ans.estimate <= stretch_bound(cfg.epsilon, d)

ratios = np.array(ratios)
print(f"every estimate >= exact distance: {sound}")
print(f"estimate / exact over {ratios.size} connected pairs: "
      f"median {np.median(ratios):.2f}, 90th pct {np.percentile(ratios, 90):.2f}, max {ratios.max():.2f}")
print("which structure produced the answer:", dict(kinds))

# Work breakdown so far.
for name, w in o.work.as_dict().items():
    print(f"  work {name:16s} {w}")

# On a random graph almost every node sits next to Q, so the HeapOne pair
# (q adjacent to both ends) answers nearly everything. A long path with short
# chords pushes most pairs far from Q and brings the other two answers in.
rng = np.random.default_rng(2)
n = 120
edges = {(i, i + 1) for i in range(n - 1)}
while len(edges) < n - 1 + 30:
    u = int(rng.integers(n - 2))
    edges.add((u, min(n - 1, u + int(rng.integers(2, 5)))))
g = DynamicGraph(n, sorted(edges))
o = Oracle(g, OracleConfig(epsilon=0.5, c=1.0, zeta_override=1, seed=2))
dist = all_pairs(g)
kinds, worst = Counter(), 0.0
for s in range(0, n, 3):
    for t in range(0, n, 5):
        ans = o.query(s, t)
        kinds[ans.witness] += 1
        if s != t:
            worst = max(worst, ans.estimate / dist[s, t])
print(f"\nchorded path n={n} |Q|={len(o.q_list)}: answers by source {dict(kinds)}, "
      f"worst estimate/exact {worst:.2f}")
