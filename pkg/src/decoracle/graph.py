"""Mutable undirected unweighted graph supporting edge deletion."""
from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

import numpy as np


class GraphError(Exception):
    """Base class for graph mutation errors."""


class EdgeAbsent(GraphError):
    pass


class SelfLoop(GraphError):
    pass


class GraphFormatError(ValueError):
    pass


@dataclass(frozen=True)
class DeletionReceipt:
    u: int
    v: int
    version: int


class DynamicGraph:
    """Undirected graph on nodes ``0..n-1`` with edge deletions only.

    ``adj`` holds the live adjacency sets. ``initial_adj`` keeps the sorted
    neighbour lists of the graph as constructed; tree structures walk these
    lists with per-node cursors and skip edges that are no longer live.
    """

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("node count must be non-negative")
        self.n = n
        self.adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            self._check_node(u)
            self._check_node(v)
            if u == v:
                raise SelfLoop(f"self loop at {u}")
            self.adj[u].add(v)
            self.adj[v].add(u)
        self.initial_adj: list[list[int]] = [sorted(a) for a in self.adj]
        self.m_initial = sum(len(a) for a in self.adj) // 2
        self.m_current = self.m_initial
        self.version = 0
        self.heavy_threshold = math.sqrt(n)

    def _check_node(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise IndexError(f"node {v} out of range [0, {self.n})")

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def neighbors(self, v: int) -> set[int]:
        return self.adj[v]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in sorted(self.adj[u]) if u < v]

    def is_heavy(self, v: int) -> bool:
        # raw real comparison, no rounding of the threshold
        return len(self.adj[v]) > self.heavy_threshold

    def heavy_nodes(self) -> list[int]:
        return [v for v in range(self.n) if self.is_heavy(v)]

    def delete_edge(self, u: int, v: int) -> DeletionReceipt:
        self._check_node(u)
        self._check_node(v)
        if u == v:
            raise SelfLoop(f"self loop at {u}")
        if v not in self.adj[u]:
            raise EdgeAbsent(f"edge ({u}, {v}) not present")
        self.adj[u].discard(v)
        self.adj[v].discard(u)
        self.m_current -= 1
        self.version += 1
        return DeletionReceipt(u, v, self.version)

    def copy(self) -> "DynamicGraph":
        g = DynamicGraph(self.n, self.edges())
        return g

    def to_csr(self):
        """Current graph as a scipy CSR adjacency matrix."""
        from scipy.sparse import csr_matrix

        rows = [u for u in range(self.n) for _ in self.adj[u]]
        cols = [w for u in range(self.n) for w in self.adj[u]]
        data = np.ones(len(rows), dtype=np.int8)
        return csr_matrix((data, (rows, cols)), shape=(self.n, self.n))

    def __repr__(self) -> str:
        return f"DynamicGraph(n={self.n}, m={self.m_current}, version={self.version})"


def parse_graph(text: str) -> DynamicGraph:
    """Parse ``"n m"`` followed by ``m`` lines ``"u v"``.

    Blank lines and ``#`` comments are ignored.
    """
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise GraphFormatError("empty graph file")
    try:
        n, m = (int(tok) for tok in lines[0].split())
    except ValueError as exc:
        raise GraphFormatError(f"bad header line: {lines[0]!r}") from exc
    body = lines[1:]
    if len(body) != m:
        raise GraphFormatError(f"header declares {m} edges, found {len(body)}")
    edges = []
    for line in body:
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"bad edge line: {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise GraphFormatError(f"bad edge line: {line!r}") from exc
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"edge ({u}, {v}) out of range")
        if u == v:
            raise GraphFormatError(f"self loop at {u}")
        edges.append((u, v))
    return DynamicGraph(n, edges)


def read_graph(path: str | Path) -> DynamicGraph:
    return parse_graph(Path(path).read_text())


def format_graph(g: DynamicGraph) -> str:
    edges = g.edges()
    lines = [f"{g.n} {len(edges)}"] + [f"{u} {v}" for u, v in edges]
    return "\n".join(lines) + "\n"


# ---- standard fixtures -----------------------------------------------------

def path_graph(n: int) -> DynamicGraph:
    return DynamicGraph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> DynamicGraph:
    return DynamicGraph(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(leaves: int) -> DynamicGraph:
    """K_{1,leaves} with centre 0."""
    return DynamicGraph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def two_block_graph(k: int = 6, bridge_len: int = 3) -> DynamicGraph:
    """Two cliques of size ``k`` joined by a path of ``bridge_len`` edges.

    Clique members have degree k-1, which exceeds sqrt(n) for the default
    sizes, so the blocks are heavy while the bridge interior is light.
    """
    edges = []
    for base in (0, k):
        edges += [(base + a, base + b) for a in range(k) for b in range(a + 1, k)]
    nodes = [k - 1] + [2 * k + j for j in range(bridge_len - 1)] + [k]
    edges += list(zip(nodes, nodes[1:]))
    return DynamicGraph(2 * k + bridge_len - 1, edges)


def gnp_graph(n: int, p: float, seed: int | None = None) -> DynamicGraph:
    """Erdos-Renyi G(n, p)."""
    rng = np.random.default_rng(seed)
    iu, ju = np.triu_indices(n, k=1)
    keep = rng.random(iu.size) < p
    return DynamicGraph(n, zip(iu[keep].tolist(), ju[keep].tolist()))


def random_deletion_order(g: DynamicGraph, seed: int | None = None) -> list[tuple[int, int]]:
    edges = g.edges()
    rng = np.random.default_rng(seed)
    order = rng.permutation(len(edges))
    return [edges[k] for k in order]
