import math

import numpy as np
import pytest

from decoracle import SampleSets, audit, draw, gnp_graph, star_graph
from decoracle.sampling import num_levels, q_probability, s_probability
from decoracle.verify import all_pairs


def test_probabilities_clamp():
    assert s_probability(4, 0.5, 1.0, 1) == 1.0  # c ln4 / (0.5 * 2) > 1
    assert q_probability(10 ** 4, 3) * 10 ** 4 == pytest.approx(3 * math.log(1e4) * 100)
    assert round(q_probability(10 ** 4, 3) * 10 ** 4) == 2763
    for n in (2, 10, 100, 10 ** 6):
        assert 0 <= q_probability(n, 50) <= 1
        for i in range(1, num_levels(n) + 1):
            assert 0 <= s_probability(n, 0.1, 50, i) <= 1


def test_small_n_level_one_is_everything():
    sets = draw(4, 0.5, 1.0, seed=3)
    assert sets.S[1] == frozenset(range(4))


def test_determinism_and_seed_sensitivity():
    a, b = draw(200, 0.5, 1.0, 11), draw(200, 0.5, 1.0, 11)
    assert a.Q == b.Q and a.S == b.S
    c = draw(200, 0.5, 1.0, 12)
    assert (a.Q, a.S) != (c.Q, c.S)


def test_bad_constant():
    with pytest.raises(ValueError):
        draw(10, 0.5, 0.0, 1)


def test_explicit_fills_missing_levels():
    s = SampleSets.explicit(8, {0}, {2: {1, 2}})
    assert s.S[1] == frozenset(range(8)) and s.S[2] == {1, 2}
    assert list(s.levels) == [1, 2, 3]


def test_audit_full_sets_never_fail():
    g = gnp_graph(40, 0.2, seed=1)
    full = SampleSets.explicit(40, range(40))
    assert audit(full, g, all_pairs(g), beta=2).ok


def test_audit_reports_unhit_heavy_node():
    g = star_graph(5)
    # the centre itself does not count: a neighbour must be sampled
    rep = audit(SampleSets.explicit(6, {0}), g, all_pairs(g), beta=100)
    assert rep.heavy_unhit == [0]
    rep = audit(SampleSets.explicit(6, {1}), g, all_pairs(g), beta=100)
    assert rep.heavy_unhit == []
    sets = SampleSets.explicit(6, set())
    rep = audit(sets, g, all_pairs(g), beta=100)
    assert rep.heavy_unhit == [0] and not rep.ok
    assert "audit-heavy 0" in rep.lines()


def test_audit_findings_reproduce_by_bfs():
    g = gnp_graph(50, 0.08, seed=2)
    sets = draw(50, 0.5, 0.3, seed=5)
    d = all_pairs(g)
    rep = audit(sets, g, d, beta=3)
    for v, i in rep.ball_unhit:
        r = 0.5 * 2 ** i
        assert not any(d[v, s] <= r for s in sets.S[i])
    for v in rep.beta_unhit:
        assert (d[v] <= 3).sum() >= math.sqrt(50)
        assert not any(d[v, q] <= 3 for q in sets.Q)


def test_high_c_hits_over_seeds():
    fails = 0
    for seed in range(50):
        g = gnp_graph(64, 0.15, seed=seed)
        sets = draw(64, 0.5, 4.0, seed)
        fails += not audit(sets, g, all_pairs(g), beta=16).ok
    assert fails <= 1
