"""Brute-force ground truth and invariant checks for a quiescent oracle.

Everything here recomputes from scratch (BFS via scipy) and compares with
the incremental state; nothing is shared with the update path except the
state being inspected.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.sparse.csgraph import shortest_path

from .estree import INF
from .graph import DynamicGraph
from .heaps import scale_floor
from .sampling import audit
from .oracle import Oracle


class VersionMismatch(RuntimeError):
    pass


@dataclass
class ExactSnapshot:
    version: int
    dist: np.ndarray
    heavy_dist: np.ndarray
    light_dist: np.ndarray
    heavy: np.ndarray  # bool mask of heavy nodes at this version


def all_pairs(g: DynamicGraph) -> np.ndarray:
    if g.n == 0:
        return np.zeros((0, 0))
    return shortest_path(g.to_csr(), method="D", unweighted=True, directed=False)


def _light_internal(g: DynamicGraph, heavy: np.ndarray) -> np.ndarray:
    n = g.n
    out = np.full((n, n), np.inf)
    for x in range(n):
        out[x, x] = 0
        dq = deque([x])
        while dq:
            w = dq.popleft()
            if w != x and heavy[w]:
                continue  # may end here but not pass through
            for z in g.adj[w]:
                if out[x, z] == np.inf:
                    out[x, z] = out[x, w] + 1
                    dq.append(z)
    return out


def snapshot(g: DynamicGraph) -> ExactSnapshot:
    dist = all_pairs(g)
    heavy = np.array([g.is_heavy(v) for v in range(g.n)], dtype=bool)
    hs = np.flatnonzero(heavy)
    if hs.size:
        dh = dist[:, hs]
        heavy_dist = (dh[:, :, None] + dist[hs][None, :, :]).min(axis=1)
    else:
        heavy_dist = np.full_like(dist, np.inf)
    return ExactSnapshot(g.version, dist, heavy_dist, _light_internal(g, heavy), heavy)


@dataclass(frozen=True)
class Violation:
    check: str
    nodes: tuple
    expected: object
    got: object
    hard: bool = True

    def line(self) -> str:
        nodes = " ".join(str(x) for x in self.nodes)
        return f"{self.check} {nodes} expected {_fmt(self.expected)} got {_fmt(self.got)}"


def _fmt(x) -> str:
    if isinstance(x, (int, np.integer)) and x >= INF:
        return "INF"
    if isinstance(x, float) and math.isinf(x):
        return "INF"
    if isinstance(x, (float, np.floating)) and float(x).is_integer():
        return str(int(x))
    return str(x)


@dataclass
class ViolationReport:
    violations: list[Violation] = field(default_factory=list)
    audit_ok: bool = True
    counts: dict[str, int] = field(default_factory=dict)

    def add(self, check: str, nodes, expected, got, hard: bool = True) -> None:
        self.violations.append(Violation(check, tuple(int(v) for v in nodes), expected, got, hard))

    @property
    def hard(self) -> list[Violation]:
        return [v for v in self.violations if v.hard]

    @property
    def warnings(self) -> list[Violation]:
        return [v for v in self.violations if not v.hard]

    @property
    def ok(self) -> bool:
        return not self.hard

    def checks_failed(self) -> set[str]:
        return {v.check for v in self.violations}

    def lines(self) -> list[str]:
        return [v.line() if v.hard else "warn " + v.line() for v in self.violations]

    def __str__(self) -> str:
        return "\n".join(self.lines())


def _capped(dist: np.ndarray, depth: float) -> np.ndarray:
    return np.where(dist <= depth, dist, INF).astype(np.int64)


def _limit(report: ViolationReport, check: str, bad: np.ndarray, cap: int = 20):
    report.counts[check] = report.counts.get(check, 0) + int(bad.size and bad.shape[0])
    return bad[:cap]


def stretch_bound(epsilon: float, d: float, power: int = 5) -> float:
    return (1 + epsilon) ** power * (d + 2)


class Verifier:
    """Runs ``check_all`` and remembers HeapStar key sets between calls."""

    def __init__(self):
        self._star_prev: dict[int, np.ndarray] = {}

    def check(self, o: Oracle, snap: ExactSnapshot, pairs=None, tilde_pairs=None) -> ViolationReport:
        rep = check_all(o, snap, pairs, tilde_pairs)
        self._check_star_monotone(o, rep)
        return rep

    def _check_star_monotone(self, o: Oracle, rep: ViolationReport) -> None:
        h = o.heaps
        for i in h.levels:
            cur = h.St <= h.star_cap[i]
            prev = self._star_prev.get(i)
            if prev is not None and prev.shape == cur.shape:
                grew = np.argwhere(cur & ~prev & h.level_mask[i][None, :, None])
                for x, j, k in _limit(rep, "heapstar-monotone", grew):
                    rep.add("heapstar-monotone", (i, x, h.s_all[j], h.q_list[k]), "absent", "present")
            self._star_prev[i] = cur.copy()


def check_all(o: Oracle, snap: ExactSnapshot, pairs=None, tilde_pairs=None) -> ViolationReport:
    """Compare every component of ``o`` with brute force on ``snap``.

    ``pairs`` are the query pairs; ``tilde_pairs`` (default: the same) are
    the pairs on which the through-Q estimate is checked.
    """
    g = o.graph
    if snap.version != g.version:
        raise VersionMismatch(f"snapshot at version {snap.version}, graph at {g.version}")
    rep = ViolationReport()
    n = o.n
    if n == 0:
        return rep
    dist = snap.dist
    aud = audit(o.sets, g, dist, o.beta)
    rep.audit_ok = aud.ok
    _check_sets(o, rep)
    _check_exact_trees(o, dist, rep)
    _check_provider(o, dist, rep)
    _check_heap_one(o, rep)
    _check_heap_one_eps(o, dist, rep)
    _check_heap_star(o, rep)
    _check_balls(o, dist, rep)
    _check_light_trees(o, dist, rep, aud.ok)
    _check_pivots(o, rep)
    if pairs is None:
        if n <= 128:
            pairs = [(s, t) for s in range(n) for t in range(n)]
        else:
            rng = np.random.default_rng(0)
            pairs = [tuple(p) for p in rng.integers(0, n, size=(1000, 2))]
    _check_tilde(o, snap, pairs if tilde_pairs is None else tilde_pairs, rep, aud.ok)
    _check_queries(o, dist, pairs, rep, aud.ok)
    return rep


def _check_sets(o: Oracle, rep: ViolationReport) -> None:
    q_src = sorted(t.source for t in o.exact_q)
    if q_src != sorted(o.sets.Q) or list(o.heaps.q_list) != sorted(o.sets.Q):
        extra = set(q_src) ^ set(o.sets.Q)
        rep.add("sets-q", sorted(extra), len(o.sets.Q), len(q_src))
    for i in o.levels:
        have = {s for (j, s) in o.trees if j == i}
        if have != set(o.sets.S[i]):
            rep.add("sets-s", [i, *sorted(have ^ set(o.sets.S[i]))], len(o.sets.S[i]), len(have))


def _tree_shape(rep: ViolationReport, name: str, g: DynamicGraph, t, depth: int,
                nodes_prefix=()) -> None:
    for v in range(g.n):
        lv = t.level[v]
        if lv == INF or v == t.source:
            continue
        p = t.parent[v]
        if p < 0 or t.level[p] != lv - 1 or p not in g.adj[v]:
            rep.add(name + "-parent", (*nodes_prefix, t.source, v), lv - 1,
                    t.level[p] if p >= 0 else INF)
        if t.scan_counter[v] > depth:
            rep.add(name + "-work", (*nodes_prefix, t.source, v), depth, t.scan_counter[v])


def _check_exact_trees(o: Oracle, dist: np.ndarray, rep: ViolationReport) -> None:
    want = _capped(dist, o.exact_depth)
    for k, t in enumerate(o.exact_q):
        lev = np.array(t.level, dtype=np.int64)
        for v in _limit(rep, "es-exact", np.flatnonzero(lev != want[t.source])):
            rep.add("es-exact", (t.source, v), want[t.source, v], lev[v])
        for v in np.flatnonzero(o.exact_levels[k] != lev):
            rep.add("exactq-mirror", (t.source, v), lev[v], o.exact_levels[k, v])
        _tree_shape(rep, "es", o.graph, t, o.exact_depth)
    if o.q_list:
        dq = o.exact_levels.min(axis=0)
        for v in np.flatnonzero(dq != o.dist_q):
            rep.add("dist-q", (v,), dq[v], o.dist_q[v])


def _check_provider(o: Oracle, dist: np.ndarray, rep: ViolationReport) -> None:
    p = o.provider
    prm = o.params
    for k, q in enumerate(p.sources):
        est = p.estimates[k].astype(float)
        est[est >= INF] = np.inf
        d = dist[q]
        if getattr(p, "name", "") == "exact":
            bad = np.flatnonzero(est != d)
        else:
            upper = np.minimum((1 + prm.epsilon / 2) * d + prm.zeta,
                               np.where(d >= prm.beta, (1 + prm.epsilon) * d, np.inf))
            bad = np.flatnonzero((est < d) | (est > upper + 1e-9))
        for v in _limit(rep, "provider", bad):
            rep.add("provider", (q, v), d[v], est[v])
        if hasattr(p, "trees"):
            _tree_shape(rep, "provider", o.graph, p.trees[k], p.trees[k].depth)


def _count_at_min(vals: np.ndarray, mins: np.ndarray, axis: int) -> np.ndarray:
    c = (vals == np.expand_dims(mins, axis)).sum(axis=axis)
    return np.where(mins < INF, c, 0)


def _check_heap_one(o: Oracle, rep: ViolationReport) -> None:
    h = o.heaps
    n = o.n
    want = np.full((n, n), INF, dtype=np.int64)
    count = np.zeros((n, n), dtype=np.int64)
    if h.nq:
        L = h.L
        sums = np.where(L[:, :, None] + L[:, None, :] <= h.h1_limit,
                        L[:, :, None] + L[:, None, :], INF)
        want = sums.min(axis=0)
        count = _count_at_min(sums, want, 0)
    for x, y in _limit(rep, "heap-one", np.argwhere(h.M1 != want)):
        rep.add("heap-one", (x, y), want[x, y], h.M1[x, y])
    for x, y in _limit(rep, "heap-one-count", np.argwhere(h.C1 != count)):
        rep.add("heap-one-count", (x, y), count[x, y], h.C1[x, y])


def _check_heap_one_eps(o: Oracle, dist: np.ndarray, rep: ViolationReport) -> None:
    h = o.heaps
    if h.nq == 0:
        return
    B = h.B
    E = h.E.astype(np.int64)
    dl = h.d_last
    # lazy slack: estimate has not yet grown by a (1+eps) factor since the last refresh
    finite = dl < INF
    slack_bad = finite & ~((B < h.factor * dl - 1e-9) | (B == dl))
    for k, x in _limit(rep, "lazy-slack", np.argwhere(slack_bad)):
        rep.add("lazy-slack", (h.q_list[k], x), f"<{h.factor * dl[k, x]:.3f}", B[k, x])
    stale_inf = (~finite) & (B < INF)
    for k, x in _limit(rep, "lazy-slack", np.argwhere(stale_inf)):
        rep.add("lazy-slack", (h.q_list[k], x), B[k, x], "INF")
    lo = np.minimum(dl[:, :, None] + dl[:, None, :], INF)
    hi = np.minimum(B[:, :, None] + B[:, None, :], INF)
    bad = np.argwhere((E < lo) | (E > hi))
    for k, x, y in _limit(rep, "heap-one-eps-entry", bad):
        rep.add("heap-one-eps-entry", (h.q_list[k], x, y), f"[{lo[k, x, y]},{hi[k, x, y]}]", E[k, x, y])
    want = E.min(axis=0)
    for x, y in _limit(rep, "heap-one-eps", np.argwhere(want != h.Me)):
        rep.add("heap-one-eps", (x, y), want[x, y], h.Me[x, y])
    count = _count_at_min(E, want, 0)
    for x, y in _limit(rep, "heap-one-eps-count", np.argwhere(count != h.Ce)):
        rep.add("heap-one-eps-count", (x, y), count[x, y], h.Ce[x, y])


def _check_heap_star(o: Oracle, rep: ViolationReport) -> None:
    h = o.heaps
    if not h.s_all:
        return
    BT = h.B.T.astype(np.int64)
    want = np.minimum(BT[:, None, :] + BT[h.s_arr][None, :, :], INF)
    bad = np.argwhere(h.St != want)
    for x, j, k in _limit(rep, "heapstar-entry", bad):
        rep.add("heapstar-entry", (x, h.s_all[j], h.q_list[k]), want[x, j, k], h.St[x, j, k])
    for i in h.levels:
        vals = np.where(h.St <= h.star_cap[i], h.St, INF)
        m = vals.min(axis=2) if h.nq else np.full(h.ms[i].shape, INF)
        m = np.where(h.level_mask[i][None, :], m, INF)
        for x, j in _limit(rep, "heapstar-min", np.argwhere(m != h.ms[i])):
            rep.add("heapstar-min", (i, x, h.s_all[j]), m[x, j], h.ms[i][x, j])
        count = _count_at_min(vals, m, 2)
        for x, j in _limit(rep, "heapstar-count", np.argwhere(count != h.cs[i])):
            rep.add("heapstar-count", (i, x, h.s_all[j]), count[x, j], h.cs[i][x, j])


def _check_balls(o: Oracle, dist: np.ndarray, rep: ViolationReport) -> None:
    b = o.balls
    for x in range(o.n):
        far = o.dist_q[x] >= o.beta
        if far != (x in b):
            rep.add("ball-active", (x,), far, x in b)
    want = _capped(dist, o.beta)
    for x, t in b.balls.items():
        lev = np.array(t.level, dtype=np.int64)
        for v in _limit(rep, "ball-level", np.flatnonzero(lev != want[x])):
            rep.add("ball-level", (x, v), want[x, v], lev[v])
        mem = set(np.flatnonzero(lev < INF).tolist())
        if mem != b.members[x]:
            rep.add("ball-members", (x,), len(mem), len(b.members[x]))
    for w in range(o.n):
        have = {x for x in b.balls if w in b.members[x]}
        if have != b.containing[w]:
            rep.add("ball-containing", (w,), sorted(have), sorted(b.containing[w]))


def _tree_matrices(o: Oracle):
    keys = list(o.trees)
    LV = np.array([o.trees[k].level for k in keys], dtype=np.int64).reshape(len(keys), o.n)
    PA = np.array([o.trees[k].parent for k in keys], dtype=np.int64).reshape(len(keys), o.n)
    SC = np.array([o.trees[k].scan_counter for k in keys], dtype=np.int64).reshape(len(keys), o.n)
    return keys, LV, PA, SC


def _adjacency(g: DynamicGraph) -> np.ndarray:
    A = np.zeros((g.n, g.n), dtype=bool)
    for u, v in g.edges():
        A[u, v] = A[v, u] = True
    return A


def _check_light_trees(o: Oracle, dist: np.ndarray, rep: ViolationReport, audit_ok: bool) -> None:
    if not o.trees:
        return
    n = o.n
    h = o.heaps
    keys, LV, PA, SC = _tree_matrices(o)
    lv_idx = np.array([i for i, _ in keys])
    src = np.array([s for _, s in keys])
    cap = 2 ** lv_idx
    inside = LV < INF
    D = dist[src]  # (T, n) true distance to each tree's source
    # exact distance for every member
    for t, v in _limit(rep, "light-short", np.argwhere(inside & (LV != D))):
        rep.add("light-short", (*keys[t], v), D[t, v], LV[t, v])
    for t, v in _limit(rep, "light-depth", np.argwhere(inside & (LV > cap[:, None]))):
        rep.add("light-depth", (*keys[t], v), cap[t], LV[t, v])
    for t, k in enumerate(keys):
        if o.trees[k].members != set(np.flatnonzero(inside[t]).tolist()):
            rep.add("light-members", k, int(inside[t].sum()), len(o.trees[k].members))
    # parent pointers: one level up over a live edge
    A = _adjacency(o.graph)
    nonroot = inside & (LV > 0)
    pa = np.where(PA >= 0, PA, 0)
    rows = np.arange(len(keys))[:, None]
    plev = LV[rows, pa]
    live = A[np.arange(n)[None, :], pa]
    bad = nonroot & ((PA < 0) | (plev != LV - 1) | ~live)
    for t, v in _limit(rep, "light-parent", np.argwhere(bad)):
        rep.add("light-parent", (*keys[t], v), LV[t, v] - 1, plev[t, v] if PA[t, v] >= 0 else INF)
    for t, v in _limit(rep, "light-work", np.argwhere(SC > cap[:, None])):
        rep.add("light-work", (*keys[t], v), cap[t], SC[t, v])

    # frontier distance of every node in every tree
    FR = np.where(A[None, :, :], LV[:, :, None], INF).min(axis=1) + 1 if n else LV
    FR = np.minimum(FR, INF)
    excluded = ~inside
    M1s = h.M1[:, src].T  # (T, n): HeapOne min for (v, source)
    # closure: excluded nodes able to attach must be certified not-light
    cand = excluded & (FR <= cap[:, None])
    test1 = (FR <= o.long_cutoff) & (M1s < INF) & (FR >= M1s - 2)
    tester = o.tester
    saved = tester.calls, tester.work
    for t, v in np.argwhere(cand & ~test1):
        tree = o.trees[keys[t]]
        if not tester(v, tree, int(FR[t, v]))[0]:
            rep.add("light-closure", (*keys[t], v), "not-light", f"light at {FR[t, v]}")
    tester.calls, tester.work = saved
    # excluded nodes within reach are covered by the through-Q estimates
    if h.s_all:
        li = np.array([h.levels.index(i) for i in lv_idx])
        sj = np.array([h.sidx[s] for s in src])
        star = h.MS[li[:, None], np.arange(n)[None, :], sj[:, None]]
    else:
        star = np.full(LV.shape, INF)
    got = np.minimum(star, M1s)
    bound = o.factor ** 2 * (D + 2)
    miss = excluded & (D <= cap[:, None]) & ~(got <= bound)
    for t, v in _limit(rep, "not-in-light", np.argwhere(miss)):
        rep.add("not-in-light", (*keys[t], v), f"<={bound[t, v]:.3f}",
                "INF" if got[t, v] >= INF else got[t, v], hard=audit_ok)
    rep.counts["not-in-light-checked"] = int((excluded & (D <= cap[:, None])).sum())


def _check_pivots(o: Oracle, rep: ViolationReport) -> None:
    if not o.trees:
        return
    keys, LV, _, _ = _tree_matrices(o)
    for i in o.levels:
        rows = [t for t, k in enumerate(keys) if k[0] == i]
        srcs = [keys[t][1] for t in rows]
        for v in range(o.n):
            want = {s: int(LV[t, v]) for t, s in zip(rows, srcs) if LV[t, v] < INF}
            have = o.pivots.sources(v, i)
            if want != have:
                diff = sorted(set(want.items()) ^ set(have.items()))
                rep.add("pivot-entries", (v, i), diff[:2], len(have))
                continue
            best = min(((d, s) for s, d in want.items()), default=None)
            got = o.pivots.pivot(v, i)
            if (best is None) != (got is None) or (best and got != (best[1], best[0])):
                rep.add("pivot", (v, i), best, got)


def _check_tilde(o: Oracle, snap: ExactSnapshot, pairs, rep: ViolationReport, audit_ok: bool) -> None:
    if not len(pairs):
        return
    h = o.heaps
    xs, ys = np.asarray(pairs, dtype=np.int64).T
    me = h.Me[xs, ys].astype(np.float64)
    m1 = h.M1[xs, ys].astype(np.float64)
    a = np.where(me >= INF, np.inf, np.floor(o.factor * me + 1e-9))
    td = np.minimum(a, np.where(m1 >= INF, np.inf, m1))
    d = snap.dist[xs, ys]
    hd = snap.heavy_dist[xs, ys]
    bound = o.factor ** 2 * (hd + 2)
    for k in np.flatnonzero(td < d)[:20]:
        rep.add("tilde-sound", (xs[k], ys[k]), f">={_fmt(d[k])}", td[k])
    for k in np.flatnonzero(np.isfinite(hd) & ~(td <= bound))[:20]:
        rep.add("tilde-stretch", (xs[k], ys[k]), f"<={bound[k]:.3f}", td[k], hard=audit_ok)
    rep.counts["tilde-checked"] = len(xs)


def witness_value(o: Oracle, s: int, t: int, ans) -> float:
    """Recompute a query answer's value from the component its witness names."""
    h = o.heaps
    if ans.witness == "identity":
        return 0
    if ans.witness == "none":
        return math.inf
    if ans.witness == "pivot-tree":
        d = o.pivots.sources(s, ans.index).get(ans.pivot, INF)
        lt = o.trees[(ans.index, ans.pivot)].level[t]
        return math.inf if max(d, lt) >= INF else d + lt
    if ans.index not in h.q_list:
        return math.inf
    k = h.q_list.index(ans.index)
    if ans.witness == "heap-one":
        v = int(h.L[k, s] + h.L[k, t])
        return v if v <= h.h1_limit else math.inf
    return scale_floor(int(h.E[k, s, t]), h.factor)


def _check_queries(o: Oracle, dist: np.ndarray, pairs, rep: ViolationReport, audit_ok: bool) -> None:
    # A source whose whole component sits at distance 1 has no node at distance
    # >= 2 eps, so no level of the ball-hitting property applies to it and the
    # stretch argument has nothing to stand on. Reported separately, never hard.
    ecc = np.where(np.isfinite(dist), dist, -1).max(axis=1)
    for s, t in pairs:
        ans = o.query(s, t)
        d = dist[s, t]
        if ans.estimate < d:
            rep.add("query-sound", (s, t), f">={_fmt(d)}", ans.estimate)
        if np.isfinite(d) and not ans.estimate <= stretch_bound(o.epsilon, d):
            covered = ecc[s] >= 2 * o.epsilon
            rep.add("query-stretch" if covered else "query-stretch-uncovered", (s, t),
                    f"<={stretch_bound(o.epsilon, d):.3f}", ans.estimate,
                    hard=audit_ok and covered)
        w = witness_value(o, s, t, ans)
        if w != ans.estimate:
            rep.add("query-witness", (s, t), w, ans.estimate)


# ---- fault injection --------------------------------------------------------

MUTATIONS = (
    "q-set", "s-set", "exactq-level", "provider-estimate", "heap-one-entry",
    "d-last", "heapstar-min", "ball-level", "light-level", "pivot-entry",
)


def inject(o: Oracle, kind: str, seed: int = 0) -> tuple:
    """Corrupt one field of one component in place; return what was touched.

    Raises ``LookupError`` when the current state has nothing to corrupt for
    ``kind`` (for instance no active ball).
    """
    rng = np.random.default_rng(seed)

    def pick(cands):
        cands = list(cands)
        if not cands:
            raise LookupError(f"nothing to corrupt for {kind}")
        return cands[int(rng.integers(len(cands)))]

    h = o.heaps
    if kind == "q-set":
        q = pick(sorted(o.sets.Q))
        o.sets = replace(o.sets, Q=o.sets.Q - {q})
        return (q,)
    if kind == "s-set":
        i = pick([i for i in o.levels if o.sets.S[i]])
        s = pick(sorted(o.sets.S[i]))
        S = dict(o.sets.S)
        S[i] = S[i] - {s}
        o.sets = replace(o.sets, S=S)
        return (i, s)
    if kind == "exactq-level":
        t = pick([t for t in o.exact_q if any(0 < l < INF for l in t.level)])
        v = pick([v for v, l in enumerate(t.level) if 0 < l < INF])
        t.level[v] += 1
        return (t.source, v)
    if kind == "provider-estimate":
        k, v = pick(map(tuple, np.argwhere(o.provider.estimates < INF)))
        o.provider.estimates[k, v] += 1
        return (o.provider.sources[k], v)
    if kind == "heap-one-entry":
        x, y = pick(map(tuple, np.argwhere(h.M1 < INF)))
        h.M1[x, y] += 1
        return (x, y)
    if kind == "d-last":
        k, x = pick(map(tuple, np.argwhere((h.d_last < INF) & (h.d_last > 0))))
        h.d_last[k, x] = 0
        return (h.q_list[k], x)
    if kind == "heapstar-min":
        i = pick([i for i in h.levels if (h.ms[i] < INF).any()])
        x, j = pick(map(tuple, np.argwhere(h.ms[i] < INF)))
        h.ms[i][x, j] += 1
        return (i, x, h.s_all[j])
    if kind == "ball-level":
        x = pick(sorted(o.balls.balls))
        t = o.balls.balls[x]
        w = pick([w for w, l in enumerate(t.level) if 0 < l < INF])
        t.level[w] += 1
        return (x, w)
    if kind == "light-level":
        key = pick([k for k, t in o.trees.items() if len(t.members) > 1])
        t = o.trees[key]
        v = pick(sorted(t.members - {t.source}))
        t.level[v] += 1
        return (*key, v)
    if kind == "pivot-entry":
        key = pick([k for k, e in o.pivots.entries.items() if e])
        s = pick(sorted(o.pivots.entries[key]))
        o.pivots.entries[key][s] += 1
        return (*key, s)
    raise ValueError(f"unknown mutation {kind!r}")
