"""Decremental approximate distance oracle tying the components together."""
from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass

import numpy as np

from .estree import INF, EsTree
from .graph import DynamicGraph
from .heaps import HeavyHeaps, scale_floor
from .light import BetaBalls, LightChange, LightTree, NotLightTester
from .pivots import Pivots
from .provider import PROVIDERS, ProviderParams
from .sampling import SampleSets, draw


class ConfigInvalid(ValueError):
    pass


@dataclass(frozen=True)
class OracleConfig:
    epsilon: float = 0.5
    c: float = 4.0
    seed: int = 0
    zeta_override: int | None = None
    verify: bool = False
    provider: str = "exact"

    def __post_init__(self):
        if not 0 < self.epsilon < 1:
            raise ConfigInvalid(f"epsilon must lie in (0, 1), got {self.epsilon}")
        if self.c <= 0:
            raise ConfigInvalid("c must be positive")
        if self.zeta_override is not None and self.zeta_override < 1:
            raise ConfigInvalid("zeta override must be >= 1")
        if self.provider not in PROVIDERS:
            raise ConfigInvalid(f"unknown provider {self.provider!r}")


@dataclass(frozen=True)
class QueryAnswer:
    estimate: float
    witness: str  # "identity", "pivot-tree", "heap-one", "heap-one-eps" or "none"
    index: int | None = None  # level i for pivot-tree, q for the heap witnesses
    pivot: int | None = None
    probes: int = 0


@dataclass
class UpdateStats:
    version: int
    exact_raises: int = 0
    provider_raises: int = 0
    h1_increases: int = 0
    lazy_refreshes: int = 0
    star_increases: int = 0
    balls_activated: int = 0
    balls_changed: int = 0
    light_changes: int = 0
    membership_changes: int = 0
    work: int = 0

    @property
    def levels_raised(self) -> int:
        return self.exact_raises + self.provider_raises


@dataclass
class WorkCounters:
    exact_trees: int = 0
    provider: int = 0
    heaps: int = 0
    balls: int = 0
    light_trees: int = 0
    not_light_tests: int = 0
    pivots: int = 0

    @property
    def total(self) -> int:
        return (self.exact_trees + self.provider + self.heaps + self.balls
                + self.light_trees + self.not_light_tests + self.pivots)

    def as_dict(self) -> dict[str, int]:
        d = {k: getattr(self, k) for k in self.__dataclass_fields__}
        d["total"] = self.total
        return d


class Oracle:
    """Decremental (1+eps)^O(1)·(d+2) distance oracle.

    ``sets`` overrides the random draw of Q and S_i; fixtures use it to pin
    the samples.
    """

    def __init__(self, graph: DynamicGraph, cfg: OracleConfig | None = None,
                 sets: SampleSets | None = None):
        cfg = cfg or OracleConfig()
        self.cfg = cfg
        self.graph = graph
        n = graph.n
        self.n = n
        self.params = ProviderParams.derive(max(n, 1), cfg.epsilon, cfg.zeta_override)
        self.epsilon = cfg.epsilon
        self.factor = 1.0 + cfg.epsilon
        self.beta = self.params.beta
        self.long_cutoff = self.params.long_cutoff
        self.exact_depth = math.floor(self.long_cutoff) + 1
        self.sets = sets if sets is not None else draw(n, cfg.epsilon, cfg.c, cfg.seed)
        self.q_list = self.sets.q_list
        self.levels = list(self.sets.levels)

        self.exact_q = [EsTree(graph, q, self.exact_depth) for q in self.q_list]
        self.exact_levels = np.array([t.level for t in self.exact_q], dtype=np.int64).reshape(len(self.q_list), n)
        self.dist_q = (self.exact_levels.min(axis=0) if self.q_list
                       else np.full(n, INF, dtype=np.int64))

        self.provider = PROVIDERS[cfg.provider](graph, self.q_list, self.params)
        self.heaps = HeavyHeaps(n, self.q_list, self.exact_levels, self.provider.estimates,
                                self.sets.S, cfg.epsilon, self.long_cutoff)
        self.balls = BetaBalls(graph, self.beta)
        for x in range(n):
            if self.dist_q[x] >= self.beta:
                self.balls.activate(x)
        self.tester = NotLightTester(self.heaps, self.balls, self._dist_to_q,
                                     self.long_cutoff, self.beta, cfg.epsilon)
        self.pivots = Pivots(n, self.levels)
        self.trees: dict[tuple[int, int], LightTree] = {}
        for i in self.levels:
            for s in sorted(self.sets.S[i]):
                t = LightTree(graph, i, s, self.tester)
                self.trees[(i, s)] = t
                self.pivots.set(s, i, s, 0)
                for ch in t.initial_events:
                    self.pivots.set(ch.node, i, s, ch.new)
        self.build_work = self.work.total
        # heap keys only ever leave, so the count at build time is the peak
        self.peak_live_entries = self.heaps.live_entries()
        self.history: list[UpdateStats] = []

    def _dist_to_q(self, v: int) -> int:
        return int(self.dist_q[v])

    # ---- work accounting --------------------------------------------------

    @property
    def work(self) -> WorkCounters:
        return WorkCounters(
            exact_trees=sum(t.total_work + t.build_work for t in self.exact_q),
            provider=sum(t.total_work + t.build_work for t in getattr(self.provider, "trees", [])),
            heaps=self.heaps.work,
            balls=sum(t.total_work + t.build_work for t in self.balls.balls.values()),
            light_trees=sum(t.total_work for t in self.trees.values()),
            not_light_tests=self.tester.work + self.tester.calls,
            pivots=self.pivots.updates,
        )

    # ---- updates ----------------------------------------------------------

    def delete(self, u: int, v: int) -> UpdateStats:
        """Delete edge ``{u, v}`` and bring every component up to date."""
        before = self.work.total
        receipt = self.graph.delete_edge(u, v)
        stats = UpdateStats(receipt.version)

        # exact trees from Q
        changed: dict[int, set[int]] = defaultdict(set)
        L = self.exact_levels
        h1_up = []
        for k, t in enumerate(self.exact_q):
            for ev in t.on_delete(u, v):
                L[k, ev.node] = ev.new
                changed[ev.node].add(k)
                stats.exact_raises += 1
                h1_up += self.heaps.on_exact_increase(k, ev.node, ev.old)
        for x in changed:
            self.dist_q[x] = L[:, x].min()
        stats.h1_increases = len(h1_up)

        # provider views, then the estimate-driven heap families
        br_events = self.provider.on_delete(u, v)
        stats.provider_raises = len(br_events)
        stats.lazy_refreshes, star_up = self.heaps.apply_br(br_events)
        stats.star_increases = len(star_up)

        # beta-balls: repair live ones, then activate newly far nodes
        ball_changed = self.balls.on_delete(u, v)
        for x in changed:
            if x not in self.balls and self.dist_q[x] >= self.beta:
                self.balls.activate(x)
                stats.balls_activated += 1
        stats.balls_changed = len(ball_changed)

        # light trees: collect re-check candidates per tree
        cands: dict[tuple[int, int], set[int]] = defaultdict(set)
        S = self.sets.S
        for x, y, _ in h1_up:
            for i in self.levels:
                if y in S[i]:
                    cands[(i, y)].add(x)
                if x in S[i]:
                    cands[(i, x)].add(y)
        containing = self.balls.containing
        for ev in star_up:
            key = (ev.level, ev.source)
            cands[key].add(ev.node)
            cands[key].update(containing[ev.node])
        if ball_changed:
            for key in self.trees:
                cands[key].update(ball_changed)

        for key, tree in self.trees.items():
            extra = cands.get(key, ())
            if not extra and tree.level[u] == INF and tree.level[v] == INF:
                continue
            changes = tree.on_delete(u, v, extra)
            self._apply_pivots(key, changes, stats)

        stats.work = self.work.total - before
        self.history.append(stats)
        return stats

    def _apply_pivots(self, key: tuple[int, int], changes: list[LightChange],
                      stats: UpdateStats) -> None:
        i, s = key
        for ch in changes:
            stats.light_changes += 1
            if (ch.old == INF) != (ch.new == INF):
                stats.membership_changes += 1
            self.pivots.set(ch.node, i, s, ch.new)

    # ---- queries ----------------------------------------------------------

    def pivot(self, v: int, i: int) -> tuple[int, int] | None:
        return self.pivots.pivot(v, i)

    def _pivot_hit(self, s: int, t: int, i: int) -> tuple[int, int] | None:
        """(pivot, tree estimate) when t lies in T(p_i(s)), else None."""
        p = self.pivots.pivot(s, i)
        if p is None:
            return None
        src, d = p
        lt = self.trees[(i, src)].level[t]
        if lt == INF:
            return None
        return src, d + lt

    def _min_level(self, s: int, t: int) -> tuple[int | None, int]:
        """Smallest i with t in T(p_i(s)), via binary search plus a guard probe."""
        probes = 0
        lo, hi = 1, len(self.levels)
        found = None
        while lo <= hi:
            mid = (lo + hi) // 2
            probes += 1
            if self._pivot_hit(s, t, mid) is not None:
                found = mid
                hi = mid - 1
            else:
                lo = mid + 1
        if found is not None:
            consistent = True
            for j in (found - 1, found - 2):
                if j >= 1:
                    probes += 1
                    if self._pivot_hit(s, t, j) is not None:
                        consistent = False
            if consistent:
                return found, probes
        for j in self.levels:
            probes += 1
            if self._pivot_hit(s, t, j) is not None:
                return j, probes
        return None, probes

    def query(self, s: int, t: int) -> QueryAnswer:
        if s == t:
            return QueryAnswer(0, "identity")
        i, probes = self._min_level(s, t)
        best, kind, idx, piv = math.inf, "none", None, None
        if i is not None:
            piv, val = self._pivot_hit(s, t, i)
            best, kind, idx = val, "pivot-tree", i
        h1 = self.heaps.h1_min(s, t)
        if h1 < INF and h1 < best:
            best, kind, idx, piv = h1, "heap-one", self.heaps.h1_witness(s, t), None
        he = scale_floor(self.heaps.h1eps_min(s, t), self.factor)
        if he < best:
            best, kind, idx, piv = he, "heap-one-eps", self.heaps.h1eps_witness(s, t), None
        return QueryAnswer(best, kind, idx, piv, probes)

    def distance(self, s: int, t: int) -> float:
        return self.query(s, t).estimate

    def tilde_d(self, x: int, y: int) -> float:
        return self.heaps.tilde_d(x, y)
