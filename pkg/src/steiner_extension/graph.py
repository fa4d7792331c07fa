"""Simple undirected graphs, vertex orderings and the equivalent digraph."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence


class GraphError(ValueError):
    """Raised for malformed graphs, orderings or decompositions."""


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    Edges are stored as ``(u, v)`` pairs with ``u < v``. Instances are
    immutable; build them with :meth:`from_edges`.
    """

    n: int
    edges: frozenset
    adjacency: tuple = field(repr=False, compare=False)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], *, allow_duplicates: bool = True) -> "Graph":
        if n < 0:
            raise GraphError(f"vertex count must be nonnegative, got {n}")
        adj: list[set[int]] = [set() for _ in range(n)]
        normalized = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            e = (u, v) if u < v else (v, u)
            if e in normalized and not allow_duplicates:
                raise GraphError(f"duplicate edge {e}")
            normalized.add(e)
            adj[u].add(v)
            adj[v].add(u)
        return cls(n, frozenset(normalized), tuple(frozenset(a) for a in adj))

    @property
    def m(self) -> int:
        return len(self.edges)

    def vertices(self) -> range:
        return range(self.n)

    def neighbors(self, v: int) -> frozenset:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def max_degree(self) -> int:
        return max((len(a) for a in self.adjacency), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Return ``(H, old_of_new)`` where H is the relabelled induced subgraph."""
        old = sorted(set(vertices))
        new_of = {v: i for i, v in enumerate(old)}
        edges = [
            (new_of[u], new_of[v])
            for u, v in self.edges
            if u in new_of and v in new_of
        ]
        return Graph.from_edges(len(old), edges), old

    def remove(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        gone = set(vertices)
        return self.induced(v for v in range(self.n) if v not in gone)

    def components(self, within: Iterable[int] | None = None) -> list[list[int]]:
        """Connected components (sorted lists) of the subgraph induced by ``within``."""
        alive = set(range(self.n)) if within is None else set(within)
        seen: set[int] = set()
        comps = []
        for s in sorted(alive):
            if s in seen:
                continue
            comp = [s]
            seen.add(s)
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for w in self.adjacency[u]:
                    if w in alive and w not in seen:
                        seen.add(w)
                        comp.append(w)
                        queue.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self, within: Iterable[int] | None = None) -> bool:
        return len(self.components(within)) <= 1

    def bfs_distances(self, sources: Iterable[int], within: Iterable[int] | None = None) -> dict[int, int]:
        alive = None if within is None else set(within)
        dist = {}
        queue = deque()
        for s in sources:
            if s not in dist:
                dist[s] = 0
                queue.append(s)
        while queue:
            u = queue.popleft()
            for w in self.adjacency[u]:
                if w not in dist and (alive is None or w in alive):
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return dist


@dataclass(frozen=True)
class Ordering:
    """A vertex sequence together with the back-degree bound it claims."""

    sequence: tuple
    claimed_degeneracy: int

    def __len__(self) -> int:
        return len(self.sequence)

    def position(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.sequence)}


def back_degrees(g: Graph, sequence: Sequence[int]) -> list[int]:
    """Number of earlier neighbours of each vertex of ``sequence``."""
    seen: set[int] = set()
    out = []
    for v in sequence:
        out.append(sum(1 for w in g.neighbors(v) if w in seen))
        seen.add(v)
    return out


def check_ordering(g: Graph, ordering: Ordering) -> bool:
    return all(d <= ordering.claimed_degeneracy for d in back_degrees(g, ordering.sequence))


def degeneracy_ordering(g: Graph, excluded: Iterable[int] = ()) -> Ordering:
    """Min-degree peeling of ``g - excluded``; ties go to the smallest id.

    The returned sequence is the reverse of the peeling order, so every
    vertex has at most ``claimed_degeneracy`` neighbours before it.
    """
    gone = set(excluded)
    for v in gone:
        if not 0 <= v < g.n:
            raise GraphError(f"excluded vertex {v} out of range")
    alive = {v for v in range(g.n) if v not in gone}
    deg = {v: sum(1 for w in g.neighbors(v) if w in alive) for v in alive}
    peel = []
    worst = 0
    while alive:
        v = min(alive, key=lambda u: (deg[u], u))
        worst = max(worst, deg[v])
        peel.append(v)
        alive.discard(v)
        for w in g.neighbors(v):
            if w in alive:
                deg[w] -= 1
    return Ordering(tuple(reversed(peel)), worst)


@dataclass(frozen=True)
class TreeDecomposition:
    bags: tuple  # tuple of frozensets, index = bag id (0-based)
    tree_edges: tuple  # pairs of bag ids

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1


def validate_tree_decomposition(g: Graph, td: TreeDecomposition) -> None:
    """Raise :class:`GraphError` naming the first violated axiom."""
    nb = len(td.bags)
    if nb == 0:
        if g.n:
            raise GraphError("vertex coverage violated: no bags")
        return
    adj: list[set[int]] = [set() for _ in range(nb)]
    for a, b in td.tree_edges:
        if not (0 <= a < nb and 0 <= b < nb) or a == b:
            raise GraphError(f"tree edge ({a}, {b}) invalid")
        adj[a].add(b)
        adj[b].add(a)
    if len(td.tree_edges) != nb - 1 or len(_reach(adj, 0, range(nb))) != nb:
        raise GraphError("bag graph is not a tree")
    for bag in td.bags:
        for v in bag:
            if not 0 <= v < g.n:
                raise GraphError(f"bag vertex {v} out of range")
    covered = set().union(*td.bags)
    missing = set(range(g.n)) - covered
    if missing:
        raise GraphError(f"vertex coverage violated: vertex {min(missing)} in no bag")
    for u, v in g.sorted_edges():
        if not any(u in bag and v in bag for bag in td.bags):
            raise GraphError(f"edge coverage violated: edge ({u}, {v}) in no bag")
    for v in range(g.n):
        holding = [t for t, bag in enumerate(td.bags) if v in bag]
        if len(_reach(adj, holding[0], holding)) != len(holding):
            raise GraphError(f"connectivity violated: bags holding vertex {v} are not a subtree")


def _reach(adj, start, allowed) -> set[int]:
    allowed = set(allowed)
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w in allowed and w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def ordering_from_tree_decomposition(g: Graph, td: TreeDecomposition, root_bag: int = 0) -> Ordering:
    """Emit bag contents in pre-order from ``root_bag``, skipping repeats."""
    validate_tree_decomposition(g, td)
    adj: list[list[int]] = [[] for _ in td.bags]
    for a, b in td.tree_edges:
        adj[a].append(b)
        adj[b].append(a)
    seq: list[int] = []
    emitted: set[int] = set()
    if td.bags:
        stack = [(root_bag, -1)]
        while stack:
            t, parent = stack.pop()
            for v in sorted(td.bags[t]):
                if v not in emitted:
                    emitted.add(v)
                    seq.append(v)
            for c in sorted(adj[t], reverse=True):
                if c != parent:
                    stack.append((c, t))
    return Ordering(tuple(seq), max(back_degrees(g, seq), default=0))


def cut_width(g: Graph, layout: Sequence[int]) -> int:
    """Largest number of edges crossing any gap of ``layout``."""
    pos = {v: i for i, v in enumerate(layout)}
    crossing = [0] * max(len(layout), 1)
    for u, v in g.edges:
        a, b = sorted((pos[u], pos[v]))
        for i in range(a, b):
            crossing[i] += 1
    return max(crossing[: max(len(layout) - 1, 0)], default=0)


def ordering_from_cutwidth_layout(g: Graph, layout: Sequence[int]) -> Ordering:
    layout = tuple(int(v) for v in layout)
    if sorted(layout) != list(range(g.n)):
        raise GraphError("layout is not a permutation of the vertex set")
    return Ordering(layout, cut_width(g, layout))


@dataclass(frozen=True)
class EquivalentDigraph:
    """Both orientations of every edge plus a root.

    Arc ``2e`` is ``(u, v)`` and arc ``2e + 1`` is ``(v, u)`` for the e-th edge
    ``(u, v)`` of ``base.sorted_edges()``.
    """

    base: Graph
    arcs: tuple
    root: int

    def arc_index(self) -> dict[tuple[int, int], int]:
        return {a: i for i, a in enumerate(self.arcs)}


def equivalent_digraph(g: Graph, root: int) -> EquivalentDigraph:
    if not 0 <= root < g.n:
        raise GraphError(f"root {root} out of range")
    arcs = []
    for u, v in g.sorted_edges():
        arcs.append((u, v))
        arcs.append((v, u))
    return EquivalentDigraph(g, tuple(arcs), root)


def relabel_map(old_of_new: Sequence[int]) -> Mapping[int, int]:
    return {old: new for new, old in enumerate(old_of_new)}
