from decoracle import Oracle, OracleConfig, Pivots, SampleSets, path_graph
from decoracle.estree import INF


def test_lazy_heap_ties_and_removal():
    p = Pivots(5, [1, 2])
    p.set(3, 1, 4, 2)
    p.set(3, 1, 1, 2)
    assert p.pivot(3, 1) == (1, 2)  # tie goes to the smaller id
    p.set(3, 1, 1, 5)
    assert p.pivot(3, 1) == (4, 2)
    p.set(3, 1, 4, INF)
    assert p.pivot(3, 1) == (1, 5)
    p.set(3, 1, 1, INF)
    assert p.pivot(3, 1) is None
    assert p.pivot(0, 2) is None


def test_full_level_pivot_is_self():
    o = Oracle(path_graph(6), OracleConfig())
    for i in o.levels:
        if o.sets.S[i] == frozenset(range(6)):
            assert all(o.pivot(v, i) == (v, 0) for v in range(6))


def test_path_pivot_through_single_source():
    o = Oracle(path_graph(4), OracleConfig(), sets=SampleSets.explicit(4, set(), {2: {0}}))
    assert o.pivot(3, 2) == (0, 3)
    o.delete(2, 3)
    assert o.pivot(3, 2) is None
