import math

import pytest
from hypothesis import given, settings

from decoracle import EsTree, cycle_graph, path_graph
from decoracle.estree import INF

from conftest import bfs, capped, graph_and_order


def levels(t):
    return t.levels()


def test_path_levels_and_cutoff():
    assert levels(EsTree(path_graph(4), 0, 3)) == [0, 1, 2, 3]
    assert levels(EsTree(path_graph(4), 0, 2)) == [0, 1, 2, math.inf]


def test_cycle_antipode():
    t = EsTree(cycle_graph(8), 0, 8)
    assert t.dist(4) == 4
    assert t.parent[4] == 3  # lowest-numbered of {3, 5}


def test_path_cut_reports_events():
    g = path_graph(4)
    t = EsTree(g, 0, 3)
    g.delete_edge(0, 1)
    evs = t.on_delete(0, 1)
    assert sorted((e.node, e.new) for e in evs) == [(1, INF), (2, INF), (3, INF)]


@pytest.mark.parametrize("depth,want", [(8, {1: 7, 2: 6, 3: 5}), (4, {1: INF, 2: INF, 3: INF})])
def test_cycle_cut(depth, want):
    g = cycle_graph(8)
    t = EsTree(g, 0, depth)
    g.delete_edge(0, 1)
    evs = t.on_delete(0, 1)
    assert {e.node: e.new for e in evs} == want
    # the oracle value, recomputed
    ref = capped(bfs(g, 0), depth)
    assert levels(t) == ref


def test_dist_queries():
    g = path_graph(4)
    t = EsTree(g, 0, 3)
    assert t.dist(3) == 3 and t.dist(0) == 0
    g.delete_edge(2, 3)
    t.on_delete(2, 3)
    assert t.dist(3) == math.inf and t.dist(0) == 0


def test_equal_level_sibling_takes_over():
    g = cycle_graph(6)
    t = EsTree(g, 0, 6)
    assert t.parent[3] == 2
    before = levels(t)
    g.delete_edge(2, 3)
    assert t.on_delete(2, 3) == []
    assert levels(t) == before and t.parent[3] == 4


def test_edge_between_equal_levels_is_ignored():
    g = cycle_graph(5)
    t = EsTree(g, 0, 5)
    g.delete_edge(2, 3)  # both at level 2
    assert t.on_delete(2, 3) == []


@settings(max_examples=150, deadline=None)
@given(graph_and_order(max_n=12))
def test_teardown_matches_bfs(case):
    g, order = case
    depth = max(1, g.n // 2)
    t = EsTree(g, 0, depth)
    m0 = g.m_initial
    deg0 = [len(a) for a in g.initial_adj]
    for u, v in order:
        old = list(t.level)
        g.delete_edge(u, v)
        for e in t.on_delete(u, v):
            assert e.old < e.new
        assert levels(t) == capped(bfs(g, 0), depth)
        assert all(a <= b for a, b in zip(old, t.level))
        for x in range(g.n):
            if t.level[x] not in (0, INF):
                p = t.parent[x]
                assert t.level[p] == t.level[x] - 1 and p in g.adj[x]
        assert max(t.scan_counter) <= depth
        assert sum(t.scan_counter) <= m0 * depth
        assert sum(c * d for c, d in zip(t.scan_counter, deg0)) <= 2 * m0 * depth
