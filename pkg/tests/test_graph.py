import random

import networkx as nx
import pytest

from steiner_extension.generators import KINDS, complete, cycle, generate, path, random_degenerate, spider_t2
from steiner_extension.graph import (
    Graph,
    GraphError,
    TreeDecomposition,
    back_degrees,
    cut_width,
    degeneracy_ordering,
    equivalent_digraph,
    ordering_from_cutwidth_layout,
    ordering_from_tree_decomposition,
    validate_tree_decomposition,
)
from steiner_extension.instance_io import (
    Instance,
    InstanceFormatError,
    parse_instance,
    parse_layout,
    parse_solution,
    parse_tree_decomposition,
    write_instance,
    write_tree_decomposition,
)


def petersen():
    h = nx.petersen_graph()
    return Graph.from_edges(10, list(h.edges))


def test_degeneracy_examples():
    assert degeneracy_ordering(path(4)).claimed_degeneracy == 1
    assert degeneracy_ordering(complete(4)).claimed_degeneracy == 3
    assert degeneracy_ordering(petersen()).claimed_degeneracy == 3


def test_degeneracy_ordering_is_honest():
    for t in range(30):
        g = random_degenerate(12, 1 + t % 4, seed=t)
        order = degeneracy_ordering(g)
        assert max(back_degrees(g, order.sequence)) <= order.claimed_degeneracy
        # peeling is optimal: networkx core number gives the degeneracy
        assert order.claimed_degeneracy == max(nx.core_number(nx.Graph(list(g.edges))).values())


def test_degeneracy_excluded():
    order = degeneracy_ordering(complete(4), excluded=[0])
    assert sorted(order.sequence) == [1, 2, 3]
    with pytest.raises(GraphError):
        degeneracy_ordering(path(3), excluded=[7])


def test_tree_decomposition_ordering_path():
    td = TreeDecomposition((frozenset({0, 1}), frozenset({1, 2})), ((0, 1),))
    order = ordering_from_tree_decomposition(path(3), td)
    assert order.sequence == (0, 1, 2)
    assert order.claimed_degeneracy <= 2


def test_tree_decomposition_single_bag():
    td = TreeDecomposition((frozenset(range(4)),), ())
    assert ordering_from_tree_decomposition(complete(4), td).claimed_degeneracy <= 3


def test_tree_decomposition_series_parallel_bound():
    # a series-parallel graph of treewidth 2 on 10 vertices
    g = Graph.from_edges(10, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4), (4, 5), (5, 6), (4, 6), (6, 7), (7, 8), (6, 8), (8, 9), (0, 9)])
    h = nx.Graph(list(g.edges))
    width, tree = nx.algorithms.approximation.treewidth_min_fill_in(h)
    bags = list(tree.nodes)
    ids = {b: i for i, b in enumerate(bags)}
    td = TreeDecomposition(tuple(frozenset(b) for b in bags), tuple((ids[a], ids[b]) for a, b in tree.edges))
    seq = ordering_from_tree_decomposition(g, td).sequence
    assert max(back_degrees(g, seq)) <= 2 * width


def test_tree_decomposition_validation_names_axiom():
    g = path(3)
    with pytest.raises(GraphError, match="edge coverage"):
        validate_tree_decomposition(g, TreeDecomposition((frozenset({0, 1}), frozenset({2})), ((0, 1),)))
    with pytest.raises(GraphError, match="connectivity"):
        validate_tree_decomposition(
            g,
            TreeDecomposition((frozenset({0, 1}), frozenset({1, 2}), frozenset({0})), ((0, 1), (1, 2))),
        )


def test_cutwidth_orderings():
    assert ordering_from_cutwidth_layout(path(4), [0, 1, 2, 3]).claimed_degeneracy == 1
    assert ordering_from_cutwidth_layout(cycle(4), [0, 1, 2, 3]).claimed_degeneracy == 2
    rng = random.Random(1)
    for t in range(20):
        g = random_degenerate(8, 3, seed=t, density=0.7)
        layout = list(range(8))
        rng.shuffle(layout)
        assert max(back_degrees(g, layout)) <= cut_width(g, layout)
    with pytest.raises(GraphError):
        ordering_from_cutwidth_layout(path(3), [0, 0, 1])


def test_equivalent_digraph():
    d = equivalent_digraph(path(2), 0)
    assert set(d.arcs) == {(0, 1), (1, 0)}
    assert len(equivalent_digraph(complete(3), 0).arcs) == 6
    assert equivalent_digraph(Graph.from_edges(3, []), 0).arcs == ()
    # arc 2e is (u, v) and arc 2e+1 is (v, u) for the e-th sorted edge
    d = equivalent_digraph(cycle(4), 2)
    for e, (u, v) in enumerate(cycle(4).sorted_edges()):
        assert d.arcs[2 * e] == (u, v) and d.arcs[2 * e + 1] == (v, u)


def test_generators():
    c5 = generate("cycle", {"n": 5})
    assert c5.n == 5 and c5.m == 5 and all(c5.degree(v) == 2 for v in range(5))
    t2 = spider_t2()
    assert t2.n == 7 and t2.m == 6 and sorted(t2.degree(v) for v in range(7)) == [1, 1, 1, 2, 2, 2, 3]
    g = generate("random_degenerate", {"n": 20, "eta": 2}, seed=7)
    assert degeneracy_ordering(g).claimed_degeneracy <= 2
    assert generate("random_degenerate", {"n": 20, "eta": 2}, seed=7) == g
    for kind in KINDS:
        generate(kind, {"n": 5, "eta": 2})
    with pytest.raises(GraphError):
        generate("moebius", {})


def test_graph_rejects_bad_edges():
    with pytest.raises(GraphError):
        Graph.from_edges(3, [(0, 0)])
    with pytest.raises(GraphError):
        Graph.from_edges(3, [(0, 5)])


def test_parse_instance_example():
    inst = parse_instance("p edge 3 3\ne 1 2\ne 2 3\ne 1 3\nt 1\n")
    assert inst.graph == complete(3)
    assert inst.terminals == frozenset({0})


def test_parse_errors():
    with pytest.raises(InstanceFormatError, match="self-loop"):
        parse_instance("p edge 2 1\ne 1 1\n")
    with pytest.raises(InstanceFormatError):
        parse_instance("e 1 2\n")
    with pytest.raises(InstanceFormatError):
        parse_instance("p edge 2 2\ne 1 2\n")
    with pytest.raises(InstanceFormatError):
        parse_instance("p edge 2 1\ne 1 2\nt 3\n")


def test_instance_round_trip():
    for t, kind in enumerate(KINDS):
        g = generate(kind, {"n": 6, "eta": 2}, seed=t)
        inst = Instance(g, frozenset({0}), 3, 2, {"eta": 2})
        assert parse_instance(write_instance(inst, comment="round trip")) == inst


def test_decomposition_and_layout_files():
    td = TreeDecomposition((frozenset({0, 1}), frozenset({1, 2})), ((0, 1),))
    assert parse_tree_decomposition(write_tree_decomposition(td, 3)) == td
    assert parse_layout("3\n1\n2\n") == [2, 0, 1]
    assert parse_solution("2 3\n") == [1, 2]
