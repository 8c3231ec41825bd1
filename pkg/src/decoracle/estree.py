"""Bounded-depth decremental BFS tree (Even-Shiloach / King).

Levels only increase. A node's adjacency list is scanned in full only when
its level rises, so the total scanning work up to depth ``d`` is ``O(m d)``.
"""
from __future__ import annotations

import heapq
import math
from typing import NamedTuple

from .graph import DynamicGraph

#: Level sentinel for "not in the tree". Strictly greater than any depth bound
#: and small enough that two of them still fit in an int32 sum.
INF = 1 << 29


class LevelIncrease(NamedTuple):
    node: int
    old: int
    new: int


class EsTree:
    """Decremental shortest-path tree from ``source`` up to depth ``depth``.

    Each node keeps a cursor into ``graph.initial_adj[v]``. Neighbours before
    the cursor are known not to be valid parents at the node's current level;
    since levels never decrease they stay invalid until the node itself rises.
    """

    def __init__(self, graph: DynamicGraph, source: int, depth: int):
        if depth < 1:
            raise ValueError("depth bound must be >= 1")
        self.graph = graph
        self.source = source
        self.depth = depth
        n = graph.n
        self.level = [INF] * n
        self.parent = [-1] * n
        self.cursor = [0] * n
        self.scan_counter = [0] * n
        self.total_work = 0
        self.build_work = 0
        self._build()

    def _build(self) -> None:
        adj = self.graph.adj
        level = self.level
        level[self.source] = 0
        frontier = [self.source]
        work = 0
        d = 0
        while frontier and d < self.depth:
            nxt = []
            for x in frontier:
                for w in adj[x]:
                    work += 1
                    if level[w] == INF:
                        level[w] = d + 1
                        nxt.append(w)
            frontier = nxt
            d += 1
        for v in range(self.graph.n):
            if level[v] != INF and v != self.source:
                work += self._attach(v)
        self.build_work = work

    def _attach(self, v: int) -> int:
        """Point ``parent[v]`` at the lowest-numbered live neighbour one level up."""
        nbrs = self.graph.initial_adj[v]
        live = self.graph.adj[v]
        want = self.level[v] - 1
        level = self.level
        for k, w in enumerate(nbrs):
            if level[w] == want and w in live:
                self.parent[v] = w
                self.cursor[v] = k
                return k + 1
        raise AssertionError(f"node {v} at level {want + 1} has no parent")

    # ---- queries ----------------------------------------------------------

    def dist(self, v: int) -> float:
        lv = self.level[v]
        return math.inf if lv == INF else lv

    def __contains__(self, v: int) -> bool:
        return self.level[v] != INF

    def levels(self) -> list[float]:
        return [self.dist(v) for v in range(self.graph.n)]

    # ---- updates ----------------------------------------------------------

    def on_delete(self, u: int, v: int) -> list[LevelIncrease]:
        """Repair after ``{u, v}`` was removed from the graph."""
        level = self.level
        lu, lv = level[u], level[v]
        self.total_work += 1
        if lu == lv:
            return []
        if lu > lv:
            u, v = v, u
        if self.parent[v] != u:
            return []
        return self.repair([v])

    def repair(self, roots: list[int]) -> list[LevelIncrease]:
        affected, work = find_affected(self.graph, self.level, self.parent, self.cursor, roots)
        if not affected:
            self.total_work += work
            return []
        new_levels, w2 = relevel(self.graph, self.level, affected, self.depth)
        work += w2
        events = []
        level = self.level
        for y in affected:
            old = level[y]
            level[y] = new_levels.get(y, INF)
            self.scan_counter[y] += 1
            events.append(LevelIncrease(y, old, level[y]))
        for y in affected:
            if level[y] != INF:
                work += self._attach(y)
            else:
                self.parent[y] = -1
                self.cursor[y] = 0
        self.total_work += work
        return events


def find_affected(graph: DynamicGraph, level: list[int], parent: list[int],
                  cursor: list[int], roots: list[int]) -> tuple[list[int], int]:
    """Nodes whose level must rise, in increasing level order.

    A node keeps its level iff some live neighbour one level up is not itself
    affected. Processing in level order means every such neighbour has been
    classified by the time it is consulted.
    """
    adj = graph.adj
    adj0 = graph.initial_adj
    heap = [(level[r], r) for r in roots]
    heapq.heapify(heap)
    queued = set(roots)
    aff: set[int] = set()
    order: list[int] = []
    work = 0
    while heap:
        lv, y = heapq.heappop(heap)
        nbrs = adj0[y]
        live = adj[y]
        c = cursor[y]
        k = len(nbrs)
        found = -1
        while c < k:
            w = nbrs[c]
            work += 1
            if level[w] == lv - 1 and w in live and w not in aff:
                found = w
                break
            c += 1
        if found >= 0:
            cursor[y] = c
            parent[y] = found
            continue
        aff.add(y)
        order.append(y)
        for z in live:
            work += 1
            if parent[z] == y and level[z] == lv + 1 and z not in queued:
                queued.add(z)
                heapq.heappush(heap, (lv + 1, z))
    return order, work


def relevel(graph: DynamicGraph, level: list[int], affected: list[int],
            depth: int) -> tuple[dict[int, int], int]:
    """New levels for ``affected`` via a bucketed Dijkstra from unaffected nodes."""
    adj = graph.adj
    aff = set(affected)
    tent: dict[int, int] = {}
    heap = []
    work = 0
    for y in affected:
        best = INF
        for w in adj[y]:
            work += 1
            if w not in aff:
                lw = level[w]
                if lw + 1 < best:
                    best = lw + 1
        if best <= depth:
            tent[y] = best
            heap.append((best, y))
    heapq.heapify(heap)
    done: dict[int, int] = {}
    while heap:
        d, y = heapq.heappop(heap)
        if y in done or tent.get(y) != d:
            continue
        done[y] = d
        if d + 1 > depth:
            continue
        for z in adj[y]:
            work += 1
            if z in aff and z not in done and d + 1 < tent.get(z, INF):
                tent[z] = d + 1
                heapq.heappush(heap, (d + 1, z))
    return done, work
