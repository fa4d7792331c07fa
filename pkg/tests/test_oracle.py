import random
from itertools import combinations

import pytest

from steiner_extension import oracle
from steiner_extension.generators import complete, cycle, path, random_degenerate, star
from steiner_extension.graph import Graph
from steiner_extension.linalg import PrimeField
from steiner_extension.matroid import GroundElement, uniform_representation
from steiner_extension.repfam import SetFamily


def two_triangles():
    return Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])


def test_brute_sse_triangle_yes():
    res = oracle.brute_solve_sse(complete(3), {0}, 3, 2, strict=True)
    assert res.yes and res.solution == frozenset({0, 1, 2})


def test_brute_sse_path_no():
    assert not oracle.brute_solve_sse(path(4), {0, 3}, 4, 2).yes


def test_brute_sse_size_cap():
    with pytest.raises(oracle.OracleError):
        oracle.brute_solve_sse(path(oracle.SSE_CAP + 1), {0}, 3, 1)


def test_brute_deletion_examples():
    assert oracle.brute_deletion("bdds", star(5), 1, 1, {"eta": 1}).yes
    assert not oracle.brute_deletion("pw1ds", two_triangles(), 3, 2).yes
    assert oracle.brute_deletion("tdds", Graph.from_edges(4, []), 0, 1, {"eta": 1}).yes


def test_brute_deletion_unknown_tag_and_cap():
    with pytest.raises(oracle.OracleError):
        oracle.brute_deletion("nope", path(3), 1, 1)
    with pytest.raises(oracle.OracleError):
        oracle.brute_deletion("bdds", path(oracle.DELETION_CAP + 1), 1, 1, {"eta": 1})


def test_edge_connectivity_paths_agree_small():
    # (p-1)-edge deletion and networkx max-flow must agree for n <= 7
    rng = random.Random(3)
    for t in range(60):
        n = rng.randint(2, 7)
        g = random_degenerate(n, rng.randint(1, 3), seed=t, density=rng.choice([0.5, 1.0]))
        for size in range(1, n + 1):
            s = rng.sample(range(n), size)
            for p in (1, 2, 3):
                assert oracle.brute_edge_connected(g, s, p) == oracle.nx_edge_connected(g, s, p)


def test_residual_verifiers():
    assert oracle.max_degree_at_most(path(5), 2)
    assert not oracle.pathwidth_at_most_one(cycle(5))
    assert oracle.pathwidth_at_most_one(path(6))
    assert oracle.treedepth_bruteforce(path(4)) == 3
    assert oracle.treedepth_bruteforce(complete(4)) == 4
    assert oracle.longest_path_vertices(star(4)) == 3


def test_repfam_check_trivial_cases():
    m = uniform_representation(4, 2, PrimeField(5))
    fam = SetFamily.of([[(1, 0)], [(1, 1)]], 1)
    assert oracle.brute_repfam_check(m, fam, fam, 1)
    assert not oracle.brute_repfam_check(m, fam, SetFamily(1, ()), 0)


def test_repfam_check_rejects_foreign_member():
    m = uniform_representation(4, 2, PrimeField(5))
    fam = SetFamily.of([[(1, 0)]], 1)
    other = SetFamily.of([[(1, 1)]], 1)
    assert not oracle.brute_repfam_check(m, fam, other, 1)


def test_independent_pure_matches_uniform_definition():
    m = uniform_representation(6, 3, PrimeField(7))
    for r in range(5):
        for s in combinations(range(6), r):
            assert oracle.independent_pure(m, [GroundElement(1, c) for c in s]) == (r <= 3)


def test_out_branching_definition():
    assert oracle.is_out_branching(3, 0, [(0, 1), (1, 2)])
    assert not oracle.is_out_branching(3, 0, [(1, 2), (2, 1)])
    assert not oracle.is_out_branching(3, 0, [(0, 1), (2, 0)])


def test_branching_packing_on_small_graphs():
    assert oracle.brute_branching_packing(complete(4), 0, 3)
    assert not oracle.brute_branching_packing(cycle(4), 0, 3)
    assert oracle.brute_branching_packing(cycle(4), 0, 2)
