"""Edge connectivity via unit-capacity max-flow, p-segments and feasibility checks."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterable

from .graph import Graph


@dataclass(frozen=True)
class SegmentPartition:
    segments: tuple  # tuple of frozensets, sorted by smallest vertex
    p: int


def _max_flow(g: Graph, s: int, t: int, alive: set[int] | None, limit: int | None):
    """Augment shortest paths until ``limit``; returns (value, source side of a min cut)."""
    flow: dict[tuple[int, int], int] = {}
    value = 0
    while limit is None or value < limit:
        parent = {s: None}
        queue = deque([s])
        while queue and t not in parent:
            u = queue.popleft()
            for w in g.neighbors(u):
                if w in parent or (alive is not None and w not in alive):
                    continue
                if flow.get((u, w), 0) < 1:
                    parent[w] = u
                    queue.append(w)
        if t not in parent:
            return value, frozenset(parent)
        w = t
        while parent[w] is not None:
            u = parent[w]
            flow[(u, w)] = flow.get((u, w), 0) + 1
            flow[(w, u)] = flow.get((w, u), 0) - 1
            w = u
        value += 1
    return value, None


def min_cut_value(g: Graph, u: int, v: int, within: Iterable[int] | None = None, limit: int | None = None) -> int:
    """Maximum number of edge-disjoint u-v paths (capped at ``limit`` if given)."""
    if u == v:
        raise ValueError("min_cut_value needs two distinct vertices")
    for w in (u, v):
        if not 0 <= w < g.n:
            raise ValueError(f"vertex {w} out of range")
    alive = None if within is None else set(within)
    return _max_flow(g, u, v, alive, limit)[0]


def is_p_edge_connected(g: Graph, s: Iterable[int], p: int, strict: bool = False) -> bool:
    """Whether ``g[s]`` is p-edge-connected.

    A single vertex counts as p-edge-connected unless ``strict``; the empty
    set never does.
    """
    s = set(s)
    if not s:
        return False
    if len(s) == 1:
        return not strict
    if p <= 0:
        return g.is_connected(s)
    if any(sum(1 for w in g.neighbors(v) if w in s) < p for v in s):
        return False
    anchor, *rest = sorted(s)
    return all(_max_flow(g, anchor, w, s, p)[0] >= p for w in rest)


def p_segments(g: Graph, p: int, within: Iterable[int] | None = None) -> SegmentPartition:
    """Partition of ``g[within]`` into maximal p-segments.

    A part is split along any cut of value below p separating two of its
    vertices; cuts are always taken in ``g[within]`` itself.
    """
    if p < 1:
        raise ValueError("p must be at least 1")
    alive = set(range(g.n)) if within is None else set(within)
    pending = [frozenset(alive)] if alive else []
    done = []
    while pending:
        part = pending.pop()
        anchor, *rest = sorted(part)
        for w in rest:
            value, side = _max_flow(g, anchor, w, alive, p)
            if value < p:
                pending.append(part & side)
                pending.append(part - side)
                break
        else:
            done.append(part)
    return SegmentPartition(tuple(sorted(done, key=min)), p)


def feasible_superset(g: Graph, x: Iterable[int], p: int, strict: bool = False) -> frozenset | None:
    """Some ``S ⊇ x`` with ``g[S]`` p-edge-connected, or None if there is none.

    Descends through the p-segment containing ``x``; the returned set
    contains every feasible superset of a nonempty ``x``.
    """
    if not g.is_connected():
        raise ValueError("feasible_superset requires a connected graph")
    return _superset_in(g, frozenset(x), p, strict, frozenset(range(g.n)))


def _superset_in(g: Graph, x: frozenset, p: int, strict: bool, region: frozenset) -> frozenset | None:
    if not region:
        return None
    if is_p_edge_connected(g, region, p, strict):
        return region
    if len(region) == 1:
        return None
    segments = p_segments(g, p, region).segments
    if x:
        holders = [seg for seg in segments if x <= seg]
        if not holders:
            return None
        candidates = holders
    else:
        candidates = list(segments)
    for seg in candidates:
        found = _superset_in(g, x, p, strict, seg)
        if found is not None:
            return found
    return None


def feasible_deletion(
    g: Graph,
    p: int,
    recognizer: Callable[[Graph], bool],
    strict: bool = False,
) -> frozenset | None:
    """Some S with ``g[S]`` p-edge-connected and ``recognizer(g - S)``, or None.

    ``recognizer`` must describe a hereditary class. Only segments whose
    removal already lands in the class but which are not themselves
    p-edge-connected are explored further.
    """
    cache: dict[frozenset, bool] = {}

    def clean_without(s: frozenset) -> bool:
        if s not in cache:
            cache[s] = bool(recognizer(g.remove(s)[0]))
        return cache[s]

    def descend(region: frozenset) -> frozenset | None:
        if is_p_edge_connected(g, region, p, strict) and clean_without(region):
            return region
        if len(region) <= 1:
            return None
        segments = p_segments(g, p, region).segments
        for seg in segments:
            if is_p_edge_connected(g, seg, p, strict) and clean_without(seg):
                return seg
        for seg in segments:
            if len(seg) > 1 and not is_p_edge_connected(g, seg, p, strict) and clean_without(seg):
                found = descend(seg)
                if found is not None:
                    return found
        return None

    if g.n == 0:
        return None
    return descend(frozenset(range(g.n)))
