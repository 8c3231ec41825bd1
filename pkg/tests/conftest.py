"""Shared helpers: an independent BFS reference and graph strategies."""
from __future__ import annotations

import math
from collections import deque

import pytest
from hypothesis import strategies as st

from decoracle import DynamicGraph


def bfs(g: DynamicGraph, s: int) -> list[float]:
    """Plain BFS over the live adjacency; inf for unreachable nodes."""
    d = [math.inf] * g.n
    d[s] = 0
    dq = deque([s])
    while dq:
        x = dq.popleft()
        for y in g.adj[x]:
            if d[y] == math.inf:
                d[y] = d[x] + 1
                dq.append(y)
    return d


def capped(dists, depth):
    return [x if x <= depth else math.inf for x in dists]


@st.composite
def graphs(draw, min_n=2, max_n=14):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return DynamicGraph(n, [p for p, k in zip(pairs, keep) if k])


@st.composite
def graph_and_order(draw, **kw):
    g = draw(graphs(**kw))
    edges = g.edges()
    order = draw(st.permutations(edges)) if edges else []
    return g, list(order)


@pytest.fixture
def bfs_ref():
    return bfs


_ACCEPTANCE_KEY = pytest.StashKey[list]()


@pytest.fixture(scope="session")
def acceptance_log(pytestconfig):
    """Collects one ``PASS``/``FAIL`` line per acceptance criterion."""
    return pytestconfig.stash.setdefault(_ACCEPTANCE_KEY, [])


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
