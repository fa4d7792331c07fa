import random
from itertools import combinations

import numpy as np
import pytest

from steiner_extension import oracle
from steiner_extension.generators import complete, cycle, path, random_degenerate
from steiner_extension.graph import equivalent_digraph
from steiner_extension.linalg import PrimeField
from steiner_extension.matroid import (
    ArcTriple,
    GroundElement,
    LinearMatroid,
    MatroidError,
    build_sse_matroid,
    direct_sum,
    graphic_representation,
    is_independent,
    out_partition_representation,
    sse_full_matroid,
    truncate,
    uniform_representation,
)

F = PrimeField(1_000_003)


def elems(cols, layer=1):
    return [GroundElement(layer, c) for c in cols]


def test_graphic_triangle():
    g = complete(3)
    d = equivalent_digraph(g, 0)
    m = graphic_representation(g, d.arcs, F)
    assert m.rank == 2
    # both orientations of one edge
    assert not is_independent(m, elems([0, 1]))


def test_graphic_tree_and_cycle():
    g = path(5)
    d = equivalent_digraph(g, 0)
    m = graphic_representation(g, d.arcs, F)
    assert m.rank == 4
    assert is_independent(m, elems([0, 3, 4, 7]))
    c4 = cycle(4)
    d = equivalent_digraph(c4, 0)
    m = graphic_representation(c4, d.arcs, F)
    assert not is_independent(m, elems([0, 2, 4, 6]))


def test_out_partition():
    g = complete(3)
    d = equivalent_digraph(g, 0)
    m = out_partition_representation(d, F)
    idx = d.arc_index()
    assert not is_independent(m, elems([idx[(0, 1)], idx[(2, 1)]]))
    assert not is_independent(m, elems([idx[(1, 0)]]))
    assert is_independent(m, elems([idx[(0, 1)], idx[(0, 2)]]))


def test_uniform():
    m = uniform_representation(4, 2, PrimeField(5))
    for r in range(5):
        for s in combinations(range(4), r):
            assert is_independent(m, elems(s)) == (r <= 2)
    empty = uniform_representation(3, 0, F)
    assert empty.rank == 0 and is_independent(empty, []) and not is_independent(empty, elems([0]))
    assert uniform_representation(3, 3, F).rank == 3
    with pytest.raises(MatroidError):
        uniform_representation(5, 2, PrimeField(5))


def test_uniform_matches_definition():
    m = uniform_representation(6, 3, F)
    rng = random.Random(0)
    for _ in range(50):
        s = rng.sample(range(6), rng.randint(0, 6))
        assert is_independent(m, elems(s)) == (len(s) <= 3)


def test_direct_sum():
    u = uniform_representation(2, 1, F)
    m = direct_sum([u, u])
    assert m.layers == 2 and m.rank == 2
    assert is_independent(m, [GroundElement(1, 0), GroundElement(2, 1)])
    assert not is_independent(m, [GroundElement(1, 0), GroundElement(1, 1)])
    empty = LinearMatroid.from_columns(F, np.zeros((0, 0), dtype=np.int64), [])
    same = direct_sum([u, empty])
    assert same.rank == u.rank and same.size == u.size


def test_truncate_free_matroid():
    free = uniform_representation(4, 4, F)
    for seed in range(50):
        t = truncate(free, 2, seed)
        for r in range(5):
            for s in combinations(range(4), r):
                assert is_independent(t, elems(s)) == (r <= 2)


def test_truncate_edges():
    g = cycle(5)
    d = equivalent_digraph(g, 0)
    m = graphic_representation(g, d.arcs, F)
    same = truncate(m, m.rank, 3)
    for s in combinations(range(0, 10, 2), 4):
        assert is_independent(same, elems(s)) == is_independent(m, elems(s))
    zero = truncate(m, 0, 3)
    assert is_independent(zero, []) and not is_independent(zero, elems([0]))


def test_is_independent_duplicates():
    m = uniform_representation(4, 3, F)
    assert is_independent(m, [])
    assert not is_independent(m, elems([1, 1]))


def test_sse_matroid_triangle():
    g = complete(3)
    full, d = sse_full_matroid(g, 0, 3, 1, F)
    assert full.layers == 3 and full.size == 3 * 6
    hat, triples = build_sse_matroid(g, 0, 3, 1, F, seed=0)
    assert hat.rank == 6


def test_sse_matroid_triples():
    g = random_degenerate(6, 2, seed=4)
    k, p = 4, 2
    hat, triples = build_sse_matroid(g, 0, k, p, F, seed=1)
    assert hat.rank == 3 * p * (k - 1)
    d = equivalent_digraph(g, 0)
    for (arc, i), t in triples.items():
        # arcs into the root are loops of the out-partition layer
        assert is_independent(hat, t.elements) == (d.arcs[arc][1] != 0)
    t1 = ArcTriple.of(0, 1, p)
    t2 = ArcTriple.of(0, 2, p)
    assert not is_independent(hat, list(t1.elements) + list(t2.elements))


def test_sse_matroid_truncation_soundness():
    # independent in the truncation implies independent in the full sum
    g = cycle(4)
    k, p = 3, 1
    full, _ = sse_full_matroid(g, 0, k, p, F)
    hat, _ = build_sse_matroid(g, 0, k, p, F, seed=2)
    rng = random.Random(2)
    for _ in range(200):
        s = rng.sample(list(full.elements), rng.randint(1, 6))
        if is_independent(hat, s):
            assert is_independent(full, s) and len(s) <= 3 * p * (k - 1)
        elif len(s) <= 3 * p * (k - 1):
            assert not oracle.independent_pure(full, s)


def test_sse_matroid_errors():
    with pytest.raises(MatroidError):
        build_sse_matroid(complete(3), 0, 1, 1, F)
    with pytest.raises(MatroidError):
        build_sse_matroid(complete(3), 0, 3, 0, F)
