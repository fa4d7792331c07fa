"""Steiner subgraph extension on a small network.

Two offices (terminals) sit on a ring of routers with a few cross links.  We
want a cluster of at most k routers containing both offices that survives any
p - 1 cable failures, i.e. whose induced subgraph is p-edge-connected.
"""

from steiner_extension import Graph, oracle, solve_extension

# a 7-cycle with two chords
edges = [(i, (i + 1) % 7) for i in range(7)] + [(0, 3), (3, 5)]
g = Graph.from_edges(7, edges)
offices = {0, 5}

print("graph:", g.n, "vertices,", g.m, "edges; terminals", sorted(offices))
for p in (1, 2, 3):
    for k in range(2, 8):
        res = solve_extension(g, offices, k, p, strict=True)
        if res.yes:
            print(f"p={p}: smallest cluster has {len(res.solution)} vertices -> {sorted(res.solution)}")
            assert oracle.oracle_edge_connected(g, res.solution, p, True)
            break
    else:
        print(f"p={p}: no cluster of any size")

# the brute-force oracle agrees on the minimum size for p = 2
truth = min(k for k in range(2, 8) if oracle.brute_solve_sse(g, offices, k, 2, strict=True).yes)
print("oracle minimum for p=2:", truth)
