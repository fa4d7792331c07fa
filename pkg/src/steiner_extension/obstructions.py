"""Forbidden-subgraph finders and the structure of pathwidth-one graphs."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .graph import Graph, GraphError, back_degrees
from .generators import path, star

TREEDEPTH_CAP = 16
TD_OBSTRUCTION_BOUND = {1: 4, 2: 16}
PATTERN_CAP = 7


@dataclass(frozen=True)
class Obstruction:
    vertices: frozenset
    kind: str


class ObstructionPresent(GraphError):
    def __init__(self, obstruction: Obstruction):
        self.obstruction = obstruction
        super().__init__(f"graph contains a {obstruction.kind} on {sorted(obstruction.vertices)}")


# degree


def find_high_degree(g: Graph, eta: int) -> Obstruction | None:
    """A vertex of degree > eta together with eta + 1 of its neighbours."""
    for u in range(g.n):
        if g.degree(u) > eta:
            nb = sorted(g.neighbors(u))[: eta + 1]
            return Obstruction(frozenset([u, *nb]), "star")
    return None


# T2 / C3 / C4


def _find_triangle(g: Graph) -> Obstruction | None:
    for u, v in g.sorted_edges():
        common = g.neighbors(u) & g.neighbors(v)
        if common:
            return Obstruction(frozenset([u, v, min(common)]), "C3")
    return None


def _find_square(g: Graph) -> Obstruction | None:
    for a in range(g.n):
        for b, c in combinations(sorted(g.neighbors(a)), 2):
            common = (g.neighbors(b) & g.neighbors(c)) - {a}
            if common:
                return Obstruction(frozenset([a, b, c, min(common)]), "C4")
    return None


def _find_spider(g: Graph) -> Obstruction | None:
    for c in range(g.n):
        if g.degree(c) < 3:
            continue
        for legs in combinations(sorted(g.neighbors(c)), 3):
            used = {c, *legs}
            ends = _distinct_ends(g, legs, used)
            if ends is not None:
                return Obstruction(frozenset(used | set(ends)), "T2")
    return None


def _distinct_ends(g: Graph, legs: Sequence[int], used: set[int]) -> list[int] | None:
    if not legs:
        return []
    first, rest = legs[0], legs[1:]
    for b in sorted(g.neighbors(first) - used):
        tail = _distinct_ends(g, rest, used | {b})
        if tail is not None:
            return [b, *tail]
    return None


def find_obstruction_t2c3c4(g: Graph) -> Obstruction | None:
    """Some C3, C4 or T2 subgraph, looked for in that order."""
    return _find_triangle(g) or _find_square(g) or _find_spider(g)


def has_cycle(g: Graph) -> bool:
    return g.m > g.n - len(g.components())


def is_pathwidth_le1(g: Graph) -> bool:
    """No cycle and no T2 subgraph."""
    return not has_cycle(g) and _find_spider(g) is None


# pathwidth-one structure


@dataclass(frozen=True)
class Pw1Component:
    kind: str  # "tree" or "cycle"
    core: tuple  # C, in path or cycle order
    hairs: tuple  # P


@dataclass(frozen=True)
class Pw1Structure:
    components: tuple
    ordering: tuple

    @property
    def cycles(self) -> list[frozenset]:
        return [frozenset(c.core) for c in self.components if c.kind == "cycle"]


def _farthest(g: Graph, start: int, comp: set[int]) -> tuple[int, dict]:
    parent = {start: None}
    queue = deque([start])
    last = start
    while queue:
        u = queue.popleft()
        last = u
        for w in sorted(g.neighbors(u)):
            if w in comp and w not in parent:
                parent[w] = u
                queue.append(w)
    return last, parent


def _classify(g: Graph, comp: list[int]) -> Pw1Component:
    cset = set(comp)
    edges = sum(1 for u in comp for w in g.neighbors(u) if w in cset) // 2
    if edges == len(comp) - 1:
        # caterpillar: a longest path carries every non-leaf vertex
        a, _ = _farthest(g, min(comp), cset)
        b, parent = _farthest(g, a, cset)
        spine = [b]
        while parent[spine[-1]] is not None:
            spine.append(parent[spine[-1]])
        spine_set = set(spine)
        hairs = sorted(cset - spine_set)
        for h in hairs:
            if g.degree(h) != 1 or not (g.neighbors(h) & spine_set):
                raise GraphError(f"component {comp} is not a caterpillar")
        return Pw1Component("tree", tuple(spine), tuple(hairs))
    if edges == len(comp):
        core = set(comp)
        # peel pendant vertices; what remains is the unique cycle
        changed = True
        while changed:
            changed = False
            for v in sorted(core):
                if sum(1 for w in g.neighbors(v) if w in core) <= 1:
                    core.discard(v)
                    changed = True
        start = min(core)
        order = [start]
        prev = None
        cur = start
        while True:
            nxt = min(w for w in g.neighbors(cur) if w in core and w != prev)
            if nxt == start:
                break
            order.append(nxt)
            prev, cur = cur, nxt
            if len(order) > len(core):
                raise GraphError("cycle walk failed")
        hairs = sorted(cset - core)
        for h in hairs:
            if g.degree(h) != 1 or not (g.neighbors(h) & core):
                raise GraphError(f"component {comp} is not a cycle with hairs")
        return Pw1Component("cycle", tuple(order), tuple(hairs))
    raise GraphError(f"component {comp} has more than one cycle")


def pw1_structure(g: Graph) -> Pw1Structure:
    """Per component a core path or cycle C followed by its pendant hairs P.

    Requires a graph without T2, C3 or C4 subgraphs; every component is then
    a caterpillar or a cycle with pendant vertices.
    """
    obs = find_obstruction_t2c3c4(g)
    if obs is not None:
        raise ObstructionPresent(obs)
    comps = [_classify(g, c) for c in g.components()]
    order: list[int] = []
    for c in comps:
        order += list(c.core) + list(c.hairs)
    return Pw1Structure(tuple(comps), tuple(order))


def ordering_is_2_degenerate(g: Graph, order: Sequence[int]) -> bool:
    return all(d <= 2 for d in back_degrees(g, order))


# treedepth


def _td_at_most(g: Graph, vs: frozenset, d: int, memo: dict) -> bool:
    if not vs:
        return True
    if d <= 0:
        return False
    key = (vs, d)
    if key in memo:
        return memo[key]
    ok = True
    for comp in g.components(vs):
        comp = frozenset(comp)
        if len(comp) == 1:
            continue
        if not any(_td_at_most(g, comp - {u}, d - 1, memo) for u in sorted(comp)):
            ok = False
            break
    memo[key] = ok
    return ok


def treedepth_at_most(g: Graph, d: int, within: Iterable[int] | None = None) -> bool:
    vs = frozenset(range(g.n) if within is None else within)
    return _td_at_most(g, vs, d, {})


def treedepth(g: Graph) -> int:
    """Exact treedepth; td of the empty graph is 0."""
    if g.n > TREEDEPTH_CAP:
        raise GraphError(f"treedepth is capped at {TREEDEPTH_CAP} vertices")
    memo: dict = {}
    d = 0
    full = frozenset(range(g.n))
    while not _td_at_most(g, full, d, memo):
        d += 1
    return d


def _connected_sets(g: Graph, size: int):
    """All connected vertex sets of exactly ``size`` vertices, smallest first."""
    level = {frozenset([v]) for v in range(g.n)}
    for _ in range(size - 1):
        nxt = set()
        for s in level:
            for u in s:
                for w in g.neighbors(u):
                    if w not in s:
                        nxt.add(s | {w})
        level = nxt
    return sorted(level, key=sorted)


def find_td_obstruction(g: Graph, eta: int) -> Obstruction | None:
    """A connected set of at most 2^(2^eta) vertices inducing treedepth > eta."""
    if eta not in TD_OBSTRUCTION_BOUND:
        raise GraphError(f"eta={eta} unsupported: obstructions have up to 2^(2^eta) vertices; only eta in (1, 2)")
    if treedepth_at_most(g, eta):
        return None
    for size in range(2, TD_OBSTRUCTION_BOUND[eta] + 1):
        for s in _connected_sets(g, size):
            if not treedepth_at_most(g, eta, s):
                return Obstruction(s, "td-obstruction")
    raise GraphError("no small treedepth obstruction found")


# paths


def find_path_subgraph(g: Graph, eta: int, within: Iterable[int] | None = None) -> Obstruction | None:
    """A path on ``eta`` vertices (as a subgraph), by exhaustive DFS."""
    if eta < 1:
        raise GraphError("path length must be positive")
    alive = set(range(g.n) if within is None else within)

    def dfs(trail: list[int], seen: set[int]):
        if len(trail) == eta:
            return list(trail)
        for w in sorted(g.neighbors(trail[-1])):
            if w in alive and w not in seen:
                trail.append(w)
                seen.add(w)
                found = dfs(trail, seen)
                if found:
                    return found
                trail.pop()
                seen.discard(w)
        return None

    for v in sorted(alive):
        found = dfs([v], {v})
        if found:
            return Obstruction(frozenset(found), "path")
    return None


# subgraph embeddings for the scattered problem


def embeddings(g: Graph, pattern: Graph, within: Iterable[int] | None = None) -> list[frozenset]:
    """Vertex sets of all (not necessarily induced) subgraph copies of ``pattern``."""
    if pattern.n > PATTERN_CAP:
        raise GraphError(f"pattern graphs are capped at {PATTERN_CAP} vertices")
    alive = set(range(g.n) if within is None else within)
    order = _pattern_order(pattern)
    found: set[frozenset] = set()

    def extend(idx: int, image: dict[int, int], used: set[int]):
        if idx == len(order):
            found.add(frozenset(used))
            return
        pv = order[idx]
        mapped = [image[w] for w in pattern.neighbors(pv) if w in image]
        if mapped:
            pool = set.intersection(*(set(g.neighbors(u)) for u in mapped))
        else:
            pool = alive
        for v in sorted(pool & alive - used):
            if g.degree(v) < pattern.degree(pv):
                continue
            image[pv] = v
            used.add(v)
            extend(idx + 1, image, used)
            used.discard(v)
            del image[pv]

    if pattern.n == 0:
        return [frozenset()]
    extend(0, {}, set())
    return sorted(found, key=sorted)


def _pattern_order(pattern: Graph) -> list[int]:
    """Connected-first order so that candidate pools stay small."""
    order: list[int] = []
    seen: set[int] = set()
    for s in sorted(range(pattern.n), key=lambda v: -pattern.degree(v)):
        if s in seen:
            continue
        queue = deque([s])
        seen.add(s)
        while queue:
            u = queue.popleft()
            order.append(u)
            for w in sorted(pattern.neighbors(u)):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    return order


def corollary3_families(alpha: int, beta: int) -> tuple[list[Graph], list[Graph]]:
    """F1 = {K_{1,alpha+1}} (bounded degree), F2 = {P_beta} (no long path)."""
    return [star(alpha + 1)], [path(beta)]


def is_path_graph(h: Graph, length: int) -> bool:
    if h.n != length or h.m != length - 1 or not h.is_connected():
        return False
    return all(h.degree(v) <= 2 for v in range(h.n))


def component_clean(g: Graph, comp: Iterable[int], f1: Sequence[Graph], f2: Sequence[Graph]) -> bool:
    comp = set(comp)
    in_g1 = not any(embeddings(g, h, comp) for h in f1)
    if in_g1:
        return True
    return not any(embeddings(g, h, comp) for h in f2)


def scattered_clean(g: Graph, f1: Sequence[Graph], f2: Sequence[Graph]) -> bool:
    return all(component_clean(g, c, f1, f2) for c in g.components())


@dataclass(frozen=True)
class ForbiddenPair:
    j1: frozenset
    j2: frozenset
    path: tuple  # vertices of a shortest J1-J2 path; () when unreachable or overlapping
    distance: float


def _shortest_between(g: Graph, a: frozenset, b: frozenset) -> tuple[float, tuple]:
    if a & b:
        return 0, ()
    parent = {v: None for v in sorted(a)}
    queue = deque(sorted(a))
    while queue:
        u = queue.popleft()
        if u in b:
            trail = [u]
            while parent[trail[-1]] is not None:
                trail.append(parent[trail[-1]])
            trail.reverse()
            return len(trail) - 1, tuple(trail)
        for w in sorted(g.neighbors(u)):
            if w not in parent:
                parent[w] = u
                queue.append(w)
    return float("inf"), ()


def closest_forbidden_pair(g: Graph, f1: Sequence[Graph], f2: Sequence[Graph], same_component: bool = False) -> ForbiddenPair | None:
    """Embeddings J1 of an F1 member and J2 of an F2 member at minimum distance.

    The returned path runs from a J1 vertex to a J2 vertex (endpoints
    included). Pairs in different components have infinite distance and an
    empty path. With ``same_component`` such pairs are ignored.
    """
    e1 = sorted({s for h in f1 for s in embeddings(g, h)}, key=sorted)
    e2 = sorted({s for h in f2 for s in embeddings(g, h)}, key=sorted)
    if not e1 or not e2:
        return None
    best = None
    for a in e1:
        for b in e2:
            dist, trail = _shortest_between(g, a, b)
            if same_component and dist == float("inf"):
                continue
            if best is None or dist < best.distance:
                best = ForbiddenPair(a, b, trail, dist)
                if dist == 0:
                    return best
    return best
