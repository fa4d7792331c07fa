import random

import pytest

from steiner_extension import oracle
from steiner_extension.acceptance import deletion_corpus, run_deletion
from steiner_extension.deletion import (
    enumerate_minimal_hitting_sets,
    solve_bdds,
    solve_pvc,
    solve_pw1ds,
    solve_scattered,
    solve_tdds,
)
from steiner_extension.generators import caterpillar, complete, cycle, cycle_with_hairs, path, star
from steiner_extension.graph import Graph, GraphError
from steiner_extension.obstructions import Obstruction, find_high_degree


def triangle(k=None):
    return Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])


def two_triangles():
    return Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])


def triangles(h):
    for a, b in h.edges:
        common = h.neighbors(a) & h.neighbors(b)
        if common:
            return Obstruction(frozenset({a, b, min(common)}), "C3")
    return None


def test_hitting_sets():
    assert enumerate_minimal_hitting_sets(star(3), 1, lambda h: find_high_degree(h, 1)) == [frozenset({0})]
    assert enumerate_minimal_hitting_sets(path(2), 1, lambda h: find_high_degree(h, 1)) == [frozenset()]
    assert enumerate_minimal_hitting_sets(triangle(), 1, triangles) == [frozenset({0}), frozenset({1}), frozenset({2})]


def test_hitting_sets_are_minimal_and_complete():
    from itertools import combinations

    rng = random.Random(4)
    for t in range(20):
        g = Graph.from_edges(7, [e for e in complete(7).edges if rng.random() < 0.5])
        k = 3
        got = set(enumerate_minimal_hitting_sets(g, k, triangles))
        clean = [frozenset(s) for r in range(k + 1) for s in combinations(range(7), r) if triangles(g.remove(s)[0]) is None]
        minimal = {s for s in clean if not any(o < s for o in clean)}
        assert got == minimal


def test_bdds_examples():
    res = solve_bdds(star(5), 1, 1, 1)
    assert res.yes and res.solution == frozenset({0})
    assert not solve_bdds(cycle(4), 2, 2, 1).yes
    assert solve_bdds(path(5), 0, 3, 2).solution == frozenset()
    with pytest.raises(GraphError):
        solve_bdds(path(3), 1, 1, -1)


def test_pw1ds_examples():
    g = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (0, 3), (1, 4), (2, 5)])
    res = solve_pw1ds(g, 1, 1)
    assert res.yes and len(res.solution) == 1 and res.solution <= {0, 1, 2}
    assert not solve_pw1ds(two_triangles(), 3, 2).yes
    assert solve_pw1ds(caterpillar(4, 2), 0, 2).solution == frozenset()


def test_pw1ds_must_hit_long_cycles():
    # C7 has no T2, C3 or C4, yet pathwidth two
    res = solve_pw1ds(cycle(7), 1, 1)
    assert res.yes and len(res.solution) == 1
    assert not solve_pw1ds(cycle_with_hairs(7, 1), 0, 1).yes


def test_tdds_examples():
    res = solve_tdds(path(4), 2, 1, 1)
    assert res.yes and oracle.residual_ok("tdds", path(4).remove(res.solution)[0], {"eta": 1})
    assert solve_tdds(path(3), 0, 1, 2).solution == frozenset()
    assert not solve_tdds(complete(4), 3, 3, 1).yes
    assert solve_tdds(complete(4), 4, 3, 1).yes


def test_pvc_examples():
    res = solve_pvc(path(5), 1, 1, 3)
    assert res.yes and res.solution == frozenset({2})
    assert solve_pvc(path(2), 0, 1, 3).solution == frozenset()
    assert not solve_pvc(cycle(6), 3, 2, 3).yes


def test_scattered_examples():
    # K_{1,4} with P_5 hung off one leaf
    edges = [(0, 1), (0, 2), (0, 3), (0, 4), (4, 5), (5, 6), (6, 7), (7, 8)]
    g = Graph.from_edges(9, edges)
    for k in range(3):
        ours = solve_scattered(g, k, 1, alpha=2, beta=4)
        truth = oracle.brute_deletion("scattered", g, k, 1, {"alpha": 2, "beta": 4})
        assert ours.status == truth.status
    assert solve_scattered(path(3), 0, 1, alpha=2, beta=4).solution == frozenset()
    both = Graph.from_edges(6, [(0, 1), (0, 2), (0, 3), (3, 4), (4, 5)])
    assert not solve_scattered(both, 0, 1, alpha=2, beta=4).yes


def test_scattered_lambda_must_name_a_family_path():
    with pytest.raises(GraphError):
        solve_scattered(path(4), 1, 1, lam=3, alpha=2, beta=4)
    with pytest.raises(GraphError):
        solve_scattered(path(4), 1, 1)


@pytest.mark.parametrize("tag", ["bdds", "pw1ds", "tdds", "pvc", "scattered"])
def test_against_oracle(tag):
    for t, g, k, p, strict, extras in deletion_corpus(tag, 40, seed=77):
        ours = run_deletion(tag, g, k, p, extras, t, strict)
        truth = oracle.brute_deletion(tag, g, k, p, extras, strict=strict)
        assert ours.status == truth.status, (tag, t, sorted(g.edges), k, p, strict, extras)
        if ours.yes:
            s = ours.solution
            assert len(s) <= k
            assert not s or oracle.oracle_edge_connected(g, s, p, strict)
            assert oracle.residual_ok(tag, g.remove(s)[0], extras)
