"""Teardown benchmark: total oracle work against recomputing APSP after every deletion."""
from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .graph import gnp_graph, random_deletion_order
from .oracle import Oracle, OracleConfig


def apsp_recompute_work(n: int, m_initial: int) -> int:
    """Edge and node touches of n BFS runs after each of the m deletions.

    After the k-th deletion the graph has ``m - k`` edges, and one BFS touches
    ``n`` nodes and ``2 (m - k)`` arcs.
    """
    m = m_initial
    # sum over k = 1..m of n * (n + 2 (m - k))
    return n * (n * m + m * (m - 1))


@dataclass
class BenchCell:
    n: int
    p: float
    m: int
    oracle_work: int
    build_work: int
    baseline_work: int
    seconds: float
    peak_live_entries: int
    components: dict[str, int] = field(default_factory=dict)

    @property
    def ratio(self) -> float:
        return self.baseline_work / max(self.oracle_work, 1)


@dataclass
class BenchReport:
    cells: list[BenchCell] = field(default_factory=list)
    exponents: dict[float, float] = field(default_factory=dict)
    baseline_exponents: dict[float, float] = field(default_factory=dict)

    def as_dict(self) -> dict[str, str]:
        out = {}
        for c in self.cells:
            key = f"n{c.n}_p{c.p:g}"
            out[f"{key}.m"] = str(c.m)
            out[f"{key}.oracle_work"] = str(c.oracle_work)
            out[f"{key}.build_work"] = str(c.build_work)
            out[f"{key}.baseline_work"] = str(c.baseline_work)
            out[f"{key}.ratio"] = f"{c.ratio:.3f}"
            out[f"{key}.seconds"] = f"{c.seconds:.3f}"
            out[f"{key}.peak_live_entries"] = str(c.peak_live_entries)
            for name, w in c.components.items():
                out[f"{key}.work.{name}"] = str(w)
        for p, e in self.exponents.items():
            out[f"p{p:g}.exponent"] = f"{e:.3f}"
        for p, e in self.baseline_exponents.items():
            out[f"p{p:g}.baseline_exponent"] = f"{e:.3f}"
        return out

    def lines(self) -> list[str]:
        d = self.as_dict()
        return [f"{k}={d[k]}" for k in sorted(d)]


def fit_exponent(ns, works) -> float:
    """Slope of log(work) against log(n)."""
    if len(ns) < 2:
        return float("nan")
    return float(np.polyfit(np.log(ns), np.log(works), 1)[0])


def run_cell(n: int, p: float, seed: int, cfg: OracleConfig | None = None) -> BenchCell:
    cfg = cfg or OracleConfig(seed=seed)
    g = gnp_graph(n, p, seed=seed)
    order = random_deletion_order(g, seed=seed)
    t0 = time.perf_counter()
    o = Oracle(g, cfg)
    for u, v in order:
        o.delete(u, v)
    secs = time.perf_counter() - t0
    w = o.work
    return BenchCell(n, p, len(order), w.total, o.build_work,
                     apsp_recompute_work(n, len(order)), secs, o.peak_live_entries,
                     w.as_dict())


def bench_suite(sizes, densities, seed: int = 0, cfg: OracleConfig | None = None) -> BenchReport:
    rep = BenchReport()
    for p in densities:
        row = [run_cell(n, p, seed, cfg) for n in sizes]
        rep.cells += row
        rep.exponents[p] = fit_exponent([c.n for c in row], [c.oracle_work for c in row])
        rep.baseline_exponents[p] = fit_exponent([c.n for c in row], [c.baseline_work for c in row])
    return rep
