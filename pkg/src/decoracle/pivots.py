"""Per (node, level) nearest sampled source among the light trees holding the node."""
from __future__ import annotations

import heapq

from .estree import INF


class Pivots:
    """``pivot(v, i)`` is the source ``s`` in S_i minimising ``dist(v, s, T(s))``.

    Each (v, i) keeps a dict of live entries plus a heap with lazy deletion;
    ties go to the smaller source id through tuple ordering.
    """

    def __init__(self, n: int, levels):
        self.n = n
        self.levels = list(levels)
        self.entries: dict[tuple[int, int], dict[int, int]] = {}
        self._heaps: dict[tuple[int, int], list[tuple[int, int]]] = {}
        self.updates = 0

    def set(self, v: int, i: int, s: int, d: int) -> None:
        self.updates += 1
        key = (v, i)
        if d >= INF:
            ent = self.entries.get(key)
            if ent is not None:
                ent.pop(s, None)
            return
        self.entries.setdefault(key, {})[s] = d
        heapq.heappush(self._heaps.setdefault(key, []), (d, s))

    def pivot(self, v: int, i: int) -> tuple[int, int] | None:
        key = (v, i)
        ent = self.entries.get(key)
        if not ent:
            return None
        heap = self._heaps[key]
        while heap:
            d, s = heap[0]
            if ent.get(s) == d:
                return s, d
            heapq.heappop(heap)
        return None

    def sources(self, v: int, i: int) -> dict[int, int]:
        return dict(self.entries.get((v, i), {}))
