"""Brute-force reference implementations.

Nothing here calls the solvers, the max-flow code or the matroid linear
algebra; edge connectivity comes from edge deletion or networkx, ranks from
a separate pure-Python elimination.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, product
from typing import Iterable

import networkx as nx

from .graph import Graph
from .sse import SseResult

SSE_CAP = 14
DELETION_CAP = 12
REPFAM_CAP = 200_000


class OracleError(ValueError):
    pass


def to_networkx(g: Graph, within: Iterable[int] | None = None) -> nx.Graph:
    h = nx.Graph()
    nodes = range(g.n) if within is None else sorted(set(within))
    h.add_nodes_from(nodes)
    keep = set(nodes)
    h.add_edges_from((u, v) for u, v in g.edges if u in keep and v in keep)
    return h


def _connected(nodes: set, edges: list) -> bool:
    if not nodes:
        return False
    adj = {v: [] for v in nodes}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    start = next(iter(nodes))
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(nodes)


def brute_edge_connected(g: Graph, s: Iterable[int], p: int) -> bool:
    """Connected after deleting any p-1 edges of g[s] (at least two vertices)."""
    s = set(s)
    if len(s) < 2:
        return False
    edges = [(u, v) for u, v in g.sorted_edges() if u in s and v in s]
    for r in range(p):
        for gone in combinations(range(len(edges)), r):
            dead = set(gone)
            if not _connected(s, [e for t, e in enumerate(edges) if t not in dead]):
                return False
    return True


def nx_edge_connected(g: Graph, s: Iterable[int], p: int) -> bool:
    s = set(s)
    if len(s) < 2:
        return False
    h = to_networkx(g, s)
    if not nx.is_connected(h):
        return False
    return nx.edge_connectivity(h) >= p


def oracle_edge_connected(g: Graph, s: Iterable[int], p: int, strict: bool = False) -> bool:
    s = set(s)
    if not s:
        return False
    if len(s) == 1:
        return not strict
    m = sum(1 for u, v in g.edges if u in s and v in s)
    if m <= 24 and p <= 3:
        return brute_edge_connected(g, s, p)
    return nx_edge_connected(g, s, p)


def brute_solve_sse(g: Graph, x: Iterable[int], k: int, p: int, strict: bool = False) -> SseResult:
    """Scan all S ⊇ x with |S| ≤ k in order of size, then lexicographically."""
    if g.n > SSE_CAP:
        raise OracleError(f"brute_solve_sse is capped at n <= {SSE_CAP}")
    x = frozenset(x)
    rest = [v for v in range(g.n) if v not in x]
    for size in range(len(x), k + 1):
        for extra in combinations(rest, size - len(x)):
            s = x | frozenset(extra)
            if oracle_edge_connected(g, s, p, strict):
                return SseResult("yes", s, None)
    return SseResult("no")


# residual-class verifiers


def max_degree_at_most(g: Graph, eta: int) -> bool:
    return all(g.degree(v) <= eta for v in range(g.n))


def pathwidth_at_most_one(g: Graph) -> bool:
    """Vertex separation number <= 1 by a subset search over linear layouts."""
    n = g.n
    if n > 16:
        raise OracleError("pathwidth search is capped at n <= 16")
    nbr = [sum(1 << w for w in g.neighbors(v)) for v in range(n)]
    full = (1 << n) - 1

    @lru_cache(maxsize=None)
    def ok(prefix: int) -> bool:
        if prefix == full:
            return True
        for v in range(n):
            if prefix >> v & 1:
                continue
            nxt = prefix | 1 << v
            boundary = sum(1 for u in range(n) if nxt >> u & 1 and nbr[u] & ~nxt & full)
            if boundary <= 1 and ok(nxt):
                return True
        return False

    return ok(0)


def treedepth_bruteforce(g: Graph, within: Iterable[int] | None = None) -> int:
    nodes = frozenset(range(g.n) if within is None else within)

    @lru_cache(maxsize=None)
    def td(vs: frozenset) -> int:
        if not vs:
            return 0
        comps = nx.connected_components(to_networkx(g, vs))
        best = 0
        for comp in comps:
            comp = frozenset(comp)
            if len(comp) == 1:
                val = 1
            else:
                val = 1 + min(td(comp - {u}) for u in sorted(comp))
            best = max(best, val)
        return best

    return td(nodes)


def longest_path_vertices(g: Graph, within: Iterable[int] | None = None) -> int:
    nodes = set(range(g.n) if within is None else within)
    best = 0

    def dfs(v, seen):
        nonlocal best
        best = max(best, len(seen))
        for w in g.neighbors(v):
            if w in nodes and w not in seen:
                seen.add(w)
                dfs(w, seen)
                seen.discard(w)

    for v in nodes:
        dfs(v, {v})
    return best


def scattered_clean(g: Graph, alpha: int, beta: int) -> bool:
    """Every component has max degree <= alpha or no path on beta vertices."""
    for comp in nx.connected_components(to_networkx(g)):
        degs_ok = all(sum(1 for w in g.neighbors(v) if w in comp) <= alpha for v in comp)
        if not degs_ok and longest_path_vertices(g, comp) >= beta:
            return False
    return True


def residual_ok(tag: str, g: Graph, extras: dict) -> bool:
    if tag == "bdds":
        return max_degree_at_most(g, extras["eta"])
    if tag == "pw1ds":
        return pathwidth_at_most_one(g)
    if tag == "tdds":
        return treedepth_bruteforce(g) <= extras["eta"]
    if tag == "pvc":
        return longest_path_vertices(g) < extras["eta"]
    if tag == "scattered":
        return scattered_clean(g, extras["alpha"], extras["beta"])
    raise OracleError(f"unknown problem tag {tag!r}")


def brute_deletion(tag: str, g: Graph, k: int, p: int, extras: dict | None = None, strict: bool = False) -> SseResult:
    """Smallest-first scan for S with g[S] p-edge-connected (or S empty) and g - S clean."""
    extras = dict(extras or {})
    if g.n > DELETION_CAP:
        raise OracleError(f"brute_deletion is capped at n <= {DELETION_CAP}")
    for size in range(0, min(k, g.n) + 1):
        for s in combinations(range(g.n), size):
            if s and not oracle_edge_connected(g, s, p, strict):
                continue
            rest, _ = g.remove(s)
            if residual_ok(tag, rest, extras):
                return SseResult("yes", frozenset(s), None)
    return SseResult("no")


# matroid side


def rank_pure(rows: list[list[int]], q: int) -> int:
    a = [[v % q for v in r] for r in rows]
    if not a:
        return 0
    rank = 0
    cols = len(a[0])
    for c in range(cols):
        piv = next((r for r in range(rank, len(a)) if a[r][c]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = pow(a[rank][c], q - 2, q)
        a[rank] = [v * inv % q for v in a[rank]]
        for r in range(len(a)):
            if r != rank and a[r][c]:
                f = a[r][c]
                a[r] = [(v - f * w) % q for v, w in zip(a[r], a[rank])]
        rank += 1
    return rank


def independent_pure(m, elements) -> bool:
    """Column independence in a LinearMatroid, by pure-Python elimination."""
    lookup = {e: c for c, e in enumerate(m.elements)}
    cols = [lookup[tuple(e)] for e in elements]
    if len(set(cols)) != len(cols):
        return False
    if not cols:
        return True
    mat = m.matrix.tolist()
    sub = [[row[c] for c in cols] for row in mat]
    return rank_pure(sub, m.field.modulus) == len(cols)


def brute_repfam_check(m, fam, reduced, q: int) -> bool:
    """Definitional q-representativeness by scanning every Y with |Y| <= q."""
    fam_sets = [frozenset(tuple(e) for e in s) for s in fam]
    red_sets = [frozenset(tuple(e) for e in s) for s in reduced]
    if not set(red_sets) <= set(fam_sets):
        return False
    ground = [tuple(e) for e in m.elements]
    total = sum(_comb(len(ground), r) for r in range(q + 1))
    if total > REPFAM_CAP:
        raise OracleError(f"{total} candidate sets exceed the cap {REPFAM_CAP}")
    memo: dict = {}

    def ind(s):
        if s not in memo:
            memo[s] = independent_pure(m, sorted(s))
        return memo[s]

    for r in range(q + 1):
        for y in combinations(ground, r):
            y = frozenset(y)
            a = any(not (x & y) and ind(x | y) for x in fam_sets)
            b = any(not (x & y) and ind(x | y) for x in red_sets)
            if a != b:
                return False
    return True


def _comb(n: int, r: int) -> int:
    from math import comb

    return comb(n, r)


def is_out_branching(n: int, root: int, arcs: Iterable[tuple[int, int]]) -> bool:
    """Spanning arborescence on 0..n-1 rooted at ``root``, by definition."""
    arcs = list(arcs)
    if len(arcs) != n - 1:
        return False
    indeg = [0] * n
    children = [[] for _ in range(n)]
    for u, v in arcs:
        indeg[v] += 1
        children[u].append(v)
    if indeg[root] != 0 or any(indeg[v] != 1 for v in range(n) if v != root):
        return False
    seen = {root}
    stack = [root]
    while stack:
        u = stack.pop()
        for w in children[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == n


def brute_branching_packing(g: Graph, root: int, p: int) -> bool:
    """Do p arc-disjoint out-branchings rooted at ``root`` exist in the equivalent digraph?"""
    n = g.n
    if n == 1:
        return True
    others = [v for v in range(n) if v != root]
    in_arcs = {v: [(u, v) for u in sorted(g.neighbors(v))] for v in others}
    if any(not in_arcs[v] for v in others):
        return False
    branchings = []
    for choice in product(*(in_arcs[v] for v in others)):
        if is_out_branching(n, root, choice):
            branchings.append(frozenset(choice))

    def pick(start: int, used: frozenset, left: int) -> bool:
        if left == 0:
            return True
        for t in range(start, len(branchings)):
            b = branchings[t]
            if not (b & used) and pick(t + 1, used | b, left - 1):
                return True
        return False

    return pick(0, frozenset(), p)
