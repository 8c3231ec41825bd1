"""Approximate decremental SSSP provider contract and its exact reference.

Consumers see a provider as a family of views, one per source ``q``, each
exposing an integer estimate per node and reporting every estimate increase
after a deletion. A conforming estimate ``e(v)`` satisfies

* ``e(v) >= dist(q, v)``,
* ``e(v) <= (1 + eps/2) dist(q, v) + zeta`` for all ``v``,
* ``e(v) <= (1 + eps) dist(q, v)`` whenever ``dist(q, v) >= beta``.

The exact reference keeps one full-depth ES tree per source and returns the
true distance, which satisfies all three.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Protocol, Sequence

import numpy as np

from .estree import INF, EsTree
from .graph import DynamicGraph


@dataclass(frozen=True)
class ProviderParams:
    epsilon: float
    zeta: int
    beta: int

    def __post_init__(self):
        if not 0 < self.epsilon < 1:
            raise ValueError(f"epsilon must lie in (0, 1), got {self.epsilon}")
        if self.zeta < 1:
            raise ValueError("zeta must be >= 1")
        if self.beta < self.zeta:
            raise ValueError("beta must be >= zeta")

    @classmethod
    def derive(cls, n: int, epsilon: float, zeta_override: int | None = None) -> "ProviderParams":
        """Compute zeta = n^(sqrt(6/eps)/sqrt(log2 n)) capped at n, and beta = ceil(2 zeta / eps)."""
        if not 0 < epsilon < 1:
            raise ValueError(f"epsilon must lie in (0, 1), got {epsilon}")
        if zeta_override is not None:
            zeta = int(zeta_override)
        else:
            zeta = default_zeta(n, epsilon)
        beta = math.ceil(2 * zeta / epsilon)
        return cls(epsilon, zeta, beta)

    @property
    def long_cutoff(self) -> float:
        """The exact-maintenance radius 8 beta / eps."""
        return 8 * self.beta / self.epsilon


def default_zeta(n: int, epsilon: float) -> int:
    if n < 4:
        return max(1, n)
    exponent = math.sqrt(6 / epsilon) / math.sqrt(math.log2(n))
    # n ** exponent overflows quickly; compare in log space before exponentiating
    if exponent >= 1:
        return n
    return max(1, min(n, math.ceil(n ** exponent)))


class BrIncrease(NamedTuple):
    qi: int  # index into provider.sources
    node: int
    old: int
    new: int


class Provider(Protocol):
    sources: Sequence[int]
    estimates: np.ndarray  # shape (len(sources), n), INF for unreachable

    def on_delete(self, u: int, v: int) -> list[BrIncrease]: ...


class ExactProvider:
    """Reference provider: estimate(q, v) = dist(q, v) via full-depth ES trees.

    ``estimates[k]`` is the view for ``sources[k]``; it is kept in sync with
    the trees after every deletion.
    """

    name = "exact"

    def __init__(self, graph: DynamicGraph, sources: Sequence[int], params: ProviderParams):
        self.graph = graph
        self.params = params
        self.sources = list(sources)
        depth = max(1, graph.n - 1)
        self.trees = [EsTree(graph, q, depth) for q in self.sources]
        self.estimates = np.full((len(self.sources), graph.n), INF, dtype=np.int64)
        for k, t in enumerate(self.trees):
            self.estimates[k] = t.level

    def view(self, q: int) -> np.ndarray:
        return self.estimates[self.sources.index(q)]

    def estimate(self, q: int, v: int) -> float:
        e = int(self.view(q)[v])
        return math.inf if e >= INF else e

    def on_delete(self, u: int, v: int) -> list[BrIncrease]:
        out = []
        est = self.estimates
        for k, t in enumerate(self.trees):
            for ev in t.on_delete(u, v):
                est[k, ev.node] = ev.new
                out.append(BrIncrease(k, ev.node, ev.old, ev.new))
        return out

    @property
    def total_work(self) -> int:
        return sum(t.total_work for t in self.trees)


PROVIDERS = {"exact": ExactProvider}
