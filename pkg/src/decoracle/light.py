"""Light-path trees T(s) and the exact beta-balls they consult.

A light tree is a King tree from a sampled source that only admits a node
when it passes the not-light tests: otherwise a path through Q is already
about as short, and the heap estimates cover that pair. Admitted nodes sit
at their exact distance from the source; see ``verify.check_all``.
"""
from __future__ import annotations

import heapq
import math
from typing import Callable, Iterable, NamedTuple

from .estree import INF, EsTree, LevelIncrease, find_affected
from .graph import DynamicGraph
from .heaps import HeavyHeaps

_TOL = 1e-9


class StaleState(RuntimeError):
    """A test needed a beta-ball that should exist but has not been built."""


class LightChange(NamedTuple):
    node: int
    old: int
    new: int


class BetaBalls:
    """Exact depth-beta trees around nodes whose distance to Q reached beta.

    Activation is one-way: distance to Q never shrinks under deletions.
    ``containing[w]`` lists the active centres whose ball holds ``w``.
    """

    def __init__(self, graph: DynamicGraph, beta: int):
        self.graph = graph
        self.beta = beta
        self.balls: dict[int, EsTree] = {}
        self.members: dict[int, set[int]] = {}
        self.containing: list[set[int]] = [set() for _ in range(graph.n)]

    def __contains__(self, x: int) -> bool:
        return x in self.balls

    def activate(self, x: int) -> None:
        if x in self.balls:
            return
        t = EsTree(self.graph, x, self.beta)
        self.balls[x] = t
        mem = {w for w in range(self.graph.n) if t.level[w] != INF}
        self.members[x] = mem
        for w in mem:
            self.containing[w].add(x)

    def on_delete(self, u: int, v: int) -> set[int]:
        """Update every active ball; return centres whose ball changed."""
        changed = set()
        for x, t in self.balls.items():
            evs = t.on_delete(u, v)
            if not evs:
                continue
            changed.add(x)
            for ev in evs:
                if ev.new == INF:
                    self.members[x].discard(ev.node)
                    self.containing[ev.node].discard(x)
        return changed

    def dist(self, x: int, w: int) -> int:
        return self.balls[x].level[w]

    @property
    def total_work(self) -> int:
        return sum(t.total_work for t in self.balls.values())


class NotLightTester:
    """Evaluates the three not-light tests for a node against one tree."""

    def __init__(self, heaps: HeavyHeaps, balls: BetaBalls,
                 dist_to_q: Callable[[int], int], long_cutoff: float,
                 beta: int, epsilon: float):
        self.heaps = heaps
        self.balls = balls
        self.dist_to_q = dist_to_q
        self.long_cutoff = long_cutoff
        self.beta = beta
        self.factor = 1.0 + epsilon
        self.calls = 0
        self.work = 0

    def __call__(self, v: int, tree: "LightTree", D: int) -> tuple[bool, int]:
        """Return ``(True, k)`` for the first test ``k`` that fires, else ``(False, 0)``."""
        self.calls += 1
        s = tree.source
        if D <= self.long_cutoff:
            h1 = self.heaps.h1_min(v, s)
            if h1 < INF and D >= h1 - 2:
                return True, 1
            return False, 0
        f = self.factor
        heaps = self.heaps
        i = tree.level_index
        if self.dist_to_q(v) >= self.beta:
            if v not in self.balls:
                raise StaleState(f"ball around {v} inactive while dist(v, Q) >= beta")
            ball = self.balls.balls[v]
            for w in self.balls.members[v]:
                self.work += 1
                if tree.level[w] != INF:
                    continue
                ms = heaps.star_min(i, w, s)
                if ms < INF and D * f >= ball.level[w] * f + ms - _TOL:
                    return True, 2
        ms = heaps.star_min(i, v, s)
        if ms < INF and D * f >= ms - _TOL:
            return True, 3
        return False, 0


class LightTree:
    """T(s) for ``s`` in S_i, depth-capped at ``2**i``."""

    def __init__(self, graph: DynamicGraph, level_index: int, source: int,
                 tester: NotLightTester):
        self.graph = graph
        self.level_index = level_index
        self.source = source
        self.cap = 2 ** level_index
        self.tester = tester
        n = graph.n
        self.level = [INF] * n
        self.parent = [-1] * n
        self.cursor = [0] * n
        self.scan_counter = [0] * n
        self.level[source] = 0
        self.members = {source}
        self.total_work = 0
        self.initial_events = self._grow(graph.adj[source], {})

    # ---- queries ----------------------------------------------------------

    def __contains__(self, v: int) -> bool:
        return self.level[v] != INF

    def dist(self, v: int) -> float:
        lv = self.level[v]
        return math.inf if lv == INF else lv

    def frontier_dist(self, v: int) -> float:
        d = self._frontier(v)
        return math.inf if d >= INF else d

    def _frontier(self, v: int) -> int:
        live = self.graph.adj[v]
        level = self.level
        best = INF
        if len(self.members) < len(live):
            self.total_work += len(self.members)
            for w in self.members:
                if w in live and level[w] + 1 < best:
                    best = level[w] + 1
        else:
            self.total_work += len(live)
            for w in live:
                if level[w] + 1 < best:
                    best = level[w] + 1
        return best

    def is_not_light(self, v: int) -> tuple[bool, int]:
        return self.tester(v, self, self._frontier(v))

    # ---- updates ----------------------------------------------------------

    def _attach(self, v: int) -> None:
        nbrs = self.graph.initial_adj[v]
        live = self.graph.adj[v]
        want = self.level[v] - 1
        level = self.level
        for k, w in enumerate(nbrs):
            if level[w] == want and w in live:
                self.parent[v] = w
                self.cursor[v] = k
                self.total_work += k + 1
                return
        raise AssertionError(f"node {v} admitted at {want + 1} without parent")

    def _grow(self, candidates: Iterable[int], prior: dict[int, int]) -> list[LightChange]:
        """Admit excluded candidates in order of frontier distance.

        ``prior`` maps nodes just cut loose by a deletion to their old level;
        such a node returning at its old level is re-attached without a test.
        """
        level = self.level
        cap = self.cap
        adj = self.graph.adj
        heap = []
        for x in candidates:
            if level[x] == INF:
                d = self._frontier(x)
                if d <= cap:
                    heap.append((d, x))
        heapq.heapify(heap)
        admitted = []
        containing = self.tester.balls.containing
        while heap:
            d, x = heapq.heappop(heap)
            if level[x] != INF:
                continue
            d2 = self._frontier(x)
            if d2 != d:
                if d2 <= cap:
                    heapq.heappush(heap, (d2, x))
                continue
            if d > prior.get(x, -1) and self.tester(x, self, d)[0]:
                continue
            level[x] = d
            self.members.add(x)
            self._attach(x)
            admitted.append(x)
            if d + 1 <= cap:
                for z in adj[x]:
                    if level[z] == INF:
                        heapq.heappush(heap, (d + 1, z))
            for y in containing[x]:
                if level[y] == INF:
                    dy = self._frontier(y)
                    if dy <= cap:
                        heapq.heappush(heap, (dy, y))
        return [LightChange(x, prior.get(x, INF), level[x]) for x in admitted]

    def on_delete(self, u: int, v: int, extra: Iterable[int] = ()) -> list[LightChange]:
        """King cascade for deletion ``{u, v}``, then re-admission of candidates."""
        level = self.level
        lu, lv = level[u], level[v]
        affected: list[int] = []
        if lu != INF and lv != INF and lu != lv:
            if lu > lv:
                u, v = v, u
            if self.parent[v] == u:
                affected, work = find_affected(self.graph, level, self.parent, self.cursor, [v])
                self.total_work += work
        prior = {}
        cands = set(extra)
        cands.add(u)
        cands.add(v)
        adj = self.graph.adj
        for y in affected:
            prior[y] = level[y]
            level[y] = INF
            self.members.discard(y)
            self.parent[y] = -1
            self.scan_counter[y] += 1
        for y in affected:
            cands.add(y)
            self.total_work += len(adj[y])
            for z in adj[y]:
                if level[z] == INF:
                    cands.add(z)
        changes = self._grow(cands, prior)
        back = {c.node for c in changes}
        for y in affected:
            if y not in back:
                changes.append(LightChange(y, prior[y], INF))
        return [c for c in changes if c.old != c.new]

    def recheck(self, candidates: Iterable[int]) -> list[LightChange]:
        """Re-test excluded nodes whose inputs to the not-light tests grew."""
        return self._grow(candidates, {})

    def on_heapstar_increase(self, y: int) -> list[LightChange]:
        return self.recheck([y])
