"""Keyed min-structures estimating distances through the sampled set Q.

Three families, all keyed by ``q`` in Q:

``HeapOne``       exact ``dist(x,q) + dist(q,y)`` from the depth-bounded
                  exact trees, entries past the short-range limit dropped.
``HeapOnePlusEps`` provider sums ``e_q(x) + e_q(y)``, refreshed for a whole
                  row only when ``e_q(x)`` has grown by a (1+eps) factor
                  since the last refresh (``d_last``).
``HeapStar``      provider sums for pairs ``(x, s)`` with ``s`` sampled,
                  written on every increase, capped per level at
                  ``(1+eps) 2^i``. Writes never lower a stored value, so a
                  key past a level's cap is gone for good.

Each family is stored densely: the key vector for a pair is a slice of a
numpy array, and per pair we cache the minimum plus the number of keys that
attain it. Keys only grow, so when a key leaves the minimum the count drops,
and the pair is rescanned only once the count reaches zero. Unweighted
distances tie constantly, which makes that rare. Arg-min witnesses are
recovered at query time.
"""
from __future__ import annotations

import math
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .estree import INF
from .provider import BrIncrease

_TOL = 1e-9


class StarIncrease(NamedTuple):
    level: int
    node: int
    source: int
    new_min: int


def _min_count(vals: np.ndarray, limit: float, axis: int = 0):
    """Min over ``axis`` of the entries ``<= limit`` and how many attain it."""
    vals = np.where(vals <= limit, vals, INF)
    if vals.shape[axis] == 0:
        shape = list(vals.shape)
        del shape[axis]
        return np.full(shape, INF, dtype=np.int64), np.zeros(shape, dtype=np.int64)
    mins = vals.min(axis=axis).astype(np.int64)
    counts = (vals == np.expand_dims(mins, axis)).sum(axis=axis)
    counts[mins >= INF] = 0
    return mins, counts.astype(np.int64)


def scale_floor(value: int, factor: float) -> float:
    """floor(factor * value), or inf for the sentinel."""
    if value >= INF:
        return math.inf
    return math.floor(factor * value + _TOL)


class HeavyHeaps:
    """The three heap families over one shared Q indexing.

    ``exact_levels[k]`` and ``estimates[k]`` are the level/estimate rows for
    ``q_list[k]``; the owner updates them in place before calling the
    ``apply_*`` methods.
    """

    def __init__(self, n: int, q_list: Sequence[int], exact_levels: np.ndarray,
                 estimates: np.ndarray, S: dict[int, frozenset[int]],
                 epsilon: float, long_cutoff: float):
        self.n = n
        self.q_list = list(q_list)
        self.nq = len(self.q_list)
        self.L = exact_levels
        self.B = estimates
        self.epsilon = epsilon
        self.factor = 1.0 + epsilon
        self.long_cutoff = long_cutoff
        # values up to floor(cutoff)+1 are kept; see light.is_not_light test (1)
        self.h1_limit = math.floor(long_cutoff) + 1
        self.work = 0

        self._init_one()
        self._init_one_eps()

        self.levels = sorted(S)
        self.s_all = sorted(set().union(*S.values())) if S else []
        self.sidx = {s: j for j, s in enumerate(self.s_all)}
        self.level_mask = {i: np.isin(np.array(self.s_all, dtype=np.int64), list(S[i]))
                           for i in self.levels}
        self.star_cap = {i: self.factor * 2 ** i for i in self.levels}
        self._init_star()

    # ---- HeapOne ----------------------------------------------------------

    def _init_one(self) -> None:
        n = self.n
        self.M1 = np.full((n, n), INF, dtype=np.int64)
        self.C1 = np.zeros((n, n), dtype=np.int64)
        if self.nq == 0:
            return
        for x in range(n):
            vals = self.L[:, x][:, None] + self.L
            self.M1[x], self.C1[x] = _min_count(vals, self.h1_limit)
        self.work += self.nq * n * n

    def on_exact_increase(self, k: int, x: int, old: int) -> list[tuple[int, int, int]]:
        """Key ``k`` of every pair ``(x, .)`` grew; ``L[k, x]`` already holds the new level.

        Returns ``(x, y, new_min)`` for every pair whose min increased.
        """
        L, M1, C1 = self.L, self.M1, self.C1
        lim = self.h1_limit
        row = L[k]
        olds = old + row
        olds[x] = 2 * old
        self.work += self.n
        ys = np.flatnonzero((olds <= lim) & (olds == M1[x]))
        if ys.size == 0:
            return []
        C1[x, ys] -= 1
        C1[ys, x] = C1[x, ys]
        ys = ys[C1[x, ys] == 0]
        if ys.size == 0:
            return []
        vals = L[:, x][:, None] + L[:, ys]
        mins, counts = _min_count(vals, lim)
        self.work += vals.size
        M1[x, ys] = mins
        M1[ys, x] = mins
        C1[x, ys] = counts
        C1[ys, x] = counts
        return [(x, int(y), int(m)) for y, m in zip(ys, mins)]

    def h1_min(self, x: int, y: int) -> int:
        return int(self.M1[x, y])

    def h1_witness(self, x: int, y: int) -> int | None:
        if self.M1[x, y] >= INF:
            return None
        vals = self.L[:, x] + self.L[:, y]
        hit = np.flatnonzero(vals == self.M1[x, y])
        return self.q_list[int(hit[0])] if hit.size else None

    def h1_entries(self, x: int, y: int) -> dict[int, int]:
        vals = self.L[:, x] + self.L[:, y]
        return {self.q_list[k]: int(v) for k, v in enumerate(vals) if v <= self.h1_limit}

    # ---- HeapOnePlusEps ---------------------------------------------------

    def _init_one_eps(self) -> None:
        n, nq = self.n, self.nq
        B = self.B
        self.E = np.minimum(B[:, :, None] + B[:, None, :], INF).astype(np.int32)
        self.d_last = B.copy()
        self.Me, self.Ce = _min_count(self.E, INF - 1)
        self.work += nq * n * n

    def needs_refresh(self, qi: int, x: int, new_est: int) -> bool:
        last = int(self.d_last[qi, x])
        if last >= INF:
            return False
        if new_est >= INF:
            return True
        return new_est >= self.factor * last - _TOL

    def on_br_increase_lazy(self, qi: int, x: int, new_est: int) -> bool:
        """Refresh row ``x`` for key ``qi`` if the estimate crossed the (1+eps) trigger."""
        if not self.needs_refresh(qi, x, new_est):
            return False
        B, E, Me, Ce = self.B, self.E, self.Me, self.Ce
        new = np.minimum(int(B[qi, x]) + B[qi], INF)
        old = E[qi, x, :].astype(np.int64)
        E[qi, x, :] = new
        E[qi, :, x] = new
        self.d_last[qi, x] = B[qi, x]
        self.work += self.n
        ys = np.flatnonzero((old < INF) & (old == Me[x]) & (new > old))
        if ys.size:
            Ce[x, ys] -= 1
            Ce[ys, x] = Ce[x, ys]
            ys = ys[Ce[x, ys] == 0]
        if ys.size:
            mins, counts = _min_count(E[:, x, ys].astype(np.int64), INF - 1)
            self.work += self.nq * ys.size
            Me[x, ys] = mins
            Me[ys, x] = mins
            Ce[x, ys] = counts
            Ce[ys, x] = counts
        return True

    def h1eps_min(self, x: int, y: int) -> int:
        return int(self.Me[x, y])

    def h1eps_witness(self, x: int, y: int) -> int | None:
        if self.Me[x, y] >= INF:
            return None
        hit = np.flatnonzero(self.E[:, x, y] == self.Me[x, y])
        return self.q_list[int(hit[0])] if hit.size else None

    # ---- HeapStar ---------------------------------------------------------

    def _init_star(self) -> None:
        n, nq = self.n, self.nq
        s_arr = self.s_arr = np.array(self.s_all, dtype=np.int64)
        BT = self.B.T  # (n, nq)
        self.St = np.minimum(BT[:, None, :] + BT[s_arr][None, :, :], INF).astype(np.int32)
        nl = len(self.levels)
        self.caps = np.array([self.star_cap[i] for i in self.levels])
        # per-level caches stacked on axis 0; ms[i] / cs[i] are views
        self.MS = np.full((nl, n, len(self.s_all)), INF, dtype=np.int64)
        self.CS = np.zeros((nl, n, len(self.s_all)), dtype=np.int64)
        self.ms = {}
        self.cs = {}
        for li, i in enumerate(self.levels):
            mins, counts = _min_count(self.St, self.star_cap[i], axis=2)
            mins[:, ~self.level_mask[i]] = INF
            counts[:, ~self.level_mask[i]] = 0
            self.MS[li] = mins
            self.CS[li] = counts
            self.ms[i] = self.MS[li]
            self.cs[i] = self.CS[li]
        self.work += n * len(self.s_all) * nq

    def on_br_increase_strict(self, qi: int, x: int) -> list[StarIncrease]:
        """Write the current sums for every pair touching ``x`` under key ``qi``."""
        if not self.s_all:
            return []
        B, St = self.B, self.St
        out: list[StarIncrease] = []
        bx = int(B[qi, x])
        new = np.minimum(bx + B[qi, self.s_arr], INF)
        old = St[x, :, qi].astype(np.int64)
        up = np.flatnonzero(new > old)
        if up.size:
            St[x, up, qi] = new[up]
            self.work += up.size
            out += self._leave_min(np.full(up.size, x), up, old[up])
        j = self.sidx.get(x)
        if j is not None:
            new = np.minimum(bx + B[qi], INF)
            old = St[:, j, qi].astype(np.int64)
            up = np.flatnonzero(new > old)
            if up.size:
                St[up, j, qi] = new[up]
                self.work += up.size
                out += self._leave_min(up, np.full(up.size, j), old[up])
        return out

    def _leave_min(self, xs: np.ndarray, js: np.ndarray, old: np.ndarray) -> list[StarIncrease]:
        """Pairs whose key moved up from ``old``; rescan those left with no key at the min.

        Handles every level at once. Levels where ``s`` is not sampled hold
        INF, which no present key can equal.
        """
        MS, CS = self.MS, self.CS
        hit = (old[None, :] <= self.caps[:, None]) & (old[None, :] == MS[:, xs, js])
        li, pos = np.nonzero(hit)
        if li.size == 0:
            return []
        xs, js = xs[pos], js[pos]
        CS[li, xs, js] -= 1
        gone = CS[li, xs, js] == 0
        if not gone.any():
            return []
        li, xs, js = li[gone], xs[gone], js[gone]
        vals = self.St[xs, js, :].astype(np.int64)
        vals = np.where(vals <= self.caps[li][:, None], vals, INF)
        self.work += vals.size
        if vals.shape[1]:
            mins = vals.min(axis=1)
            counts = np.where(mins < INF, (vals == mins[:, None]).sum(axis=1), 0)
        else:
            mins = np.full(li.size, INF, dtype=np.int64)
            counts = np.zeros(li.size, dtype=np.int64)
        MS[li, xs, js] = mins
        CS[li, xs, js] = counts
        levels = self.levels
        return [StarIncrease(levels[l], int(x), self.s_all[int(j)], int(m))
                for l, x, j, m in zip(li, xs, js, mins)]

    def star_min(self, i: int, x: int, s: int) -> int:
        return int(self.ms[i][x, self.sidx[s]])

    def star_keys(self, i: int, x: int, s: int) -> set[int]:
        vals = self.St[x, self.sidx[s]]
        return {self.q_list[k] for k in np.flatnonzero(vals <= self.star_cap[i])}

    # ---- dispatch ---------------------------------------------------------

    def apply_br(self, events: Iterable[BrIncrease]) -> tuple[int, list[StarIncrease]]:
        """Feed provider increases to HeapOnePlusEps and HeapStar.

        Returns the number of lazy refreshes and the HeapStar min increases.
        """
        refreshes = 0
        stars: list[StarIncrease] = []
        for ev in events:
            if self.on_br_increase_lazy(ev.qi, ev.node, ev.new):
                refreshes += 1
            stars += self.on_br_increase_strict(ev.qi, ev.node)
        return refreshes, stars

    # ---- combined estimate ------------------------------------------------

    def tilde_d(self, x: int, y: int) -> float:
        """min((1+eps) * min HeapOnePlusEps, min HeapOne), floored to an integer."""
        a = scale_floor(int(self.Me[x, y]), self.factor)
        b = int(self.M1[x, y])
        b = math.inf if b >= INF else b
        return min(a, b)

    def live_entries(self) -> int:
        """Number of keys currently held across the three families."""
        h1 = 0
        for row in self.L:
            a = np.sort(row)
            h1 += int(np.searchsorted(a, self.h1_limit - a, side="right").sum())
        he = int(np.count_nonzero(self.E < INF))
        hs = sum(int(np.count_nonzero((self.St <= self.star_cap[i])[:, self.level_mask[i], :]))
                 for i in self.levels)
        return h1 + he + hs
