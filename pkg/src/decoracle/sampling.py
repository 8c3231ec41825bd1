"""Hitting-set sampling (Q and S_i) and an auditor for the hitting properties."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .graph import DynamicGraph


def num_levels(n: int) -> int:
    """Number of distance scales: i = 1..L with 2^L >= n."""
    return max(1, math.ceil(math.log2(max(n, 2))))


def q_probability(n: int, c: float) -> float:
    if n < 2:
        return 0.0
    return min(c * math.log(n) / math.sqrt(n), 1.0)


def s_probability(n: int, epsilon: float, c: float, i: int) -> float:
    if n < 2:
        return 1.0
    return min(c * math.log(n) / (epsilon * 2 ** i), 1.0)


@dataclass(frozen=True)
class SampleSets:
    """Q and S_1..S_L, drawn once and never resampled."""

    n: int
    Q: frozenset[int]
    S: dict[int, frozenset[int]]
    c: float
    epsilon: float
    seed: int | None = None

    @property
    def levels(self) -> range:
        return range(1, len(self.S) + 1)

    @property
    def q_list(self) -> list[int]:
        return sorted(self.Q)

    @classmethod
    def explicit(cls, n: int, Q, S: dict[int, set[int]] | None = None,
                 epsilon: float = 0.5) -> "SampleSets":
        """Fixed sets, for fixtures. Missing levels default to all of V."""
        L = num_levels(n)
        S = dict(S or {})
        full = {i: frozenset(S.get(i, range(n))) for i in range(1, L + 1)}
        return cls(n, frozenset(Q), full, c=math.nan, epsilon=epsilon, seed=None)


def draw(n: int, epsilon: float, c: float, seed: int | None) -> SampleSets:
    """Sample Q with prob min(c ln n / sqrt n, 1) and S_i with min(c ln n / (eps 2^i), 1)."""
    if c <= 0:
        raise ValueError("sampling constant c must be positive")
    rng = np.random.default_rng(seed)
    pq = q_probability(n, c)
    Q = frozenset(np.flatnonzero(rng.random(n) < pq).tolist())
    S = {}
    for i in range(1, num_levels(n) + 1):
        p = s_probability(n, epsilon, c, i)
        S[i] = frozenset(np.flatnonzero(rng.random(n) < p).tolist())
    return SampleSets(n, Q, S, c, epsilon, seed)


@dataclass
class AuditReport:
    heavy_unhit: list[int] = field(default_factory=list)
    ball_unhit: list[tuple[int, int]] = field(default_factory=list)
    beta_unhit: list[int] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.heavy_unhit or self.ball_unhit or self.beta_unhit)

    def lines(self) -> list[str]:
        out = [f"audit-heavy {v}" for v in self.heavy_unhit]
        out += [f"audit-ball {v} {i}" for v, i in self.ball_unhit]
        out += [f"audit-beta {v}" for v in self.beta_unhit]
        return out


def audit(sets: SampleSets, g: DynamicGraph, dist: np.ndarray, beta: int) -> AuditReport:
    """Check the three hitting properties on the current graph.

    ``dist`` is the exact all-pairs distance matrix (``np.inf`` when
    disconnected) for the current version of ``g``.
    """
    n = g.n
    rep = AuditReport()
    Q = sets.Q
    for v in range(n):
        if g.is_heavy(v) and not (g.adj[v] & Q):
            rep.heavy_unhit.append(v)
    finite = np.where(np.isfinite(dist), dist, -1)
    ecc = finite.max(axis=1) if n else np.zeros(0)
    for i in sets.levels:
        radius = sets.epsilon * 2 ** i
        members = np.zeros(n, dtype=bool)
        members[list(sets.S[i])] = True
        need = ecc >= radius
        if not need.any():
            continue
        hit = ((dist <= radius) & members[None, :]).any(axis=1)
        for v in np.flatnonzero(need & ~hit):
            rep.ball_unhit.append((int(v), i))
    qmask = np.zeros(n, dtype=bool)
    qmask[list(Q)] = True
    within = dist <= beta
    big = within.sum(axis=1) >= math.sqrt(n)
    qhit = (within & qmask[None, :]).any(axis=1)
    rep.beta_unhit = [int(v) for v in np.flatnonzero(big & ~qhit)]
    return rep
