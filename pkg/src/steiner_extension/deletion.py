"""p-edge-connected vertex deletion problems.

Each solver enumerates the inclusion-minimal deletion sets X' of size at
most k by branching on obstructions, then asks whether some X' extends to
a p-edge-connected S ⊇ X' with |S| ≤ k. Because the residual classes are
hereditary, S works whenever X' does. The empty set is accepted when the
input is already in the class.
"""

from __future__ import annotations

from typing import Callable, Sequence

from .connectivity import feasible_deletion
from .graph import Graph, GraphError
from .obstructions import (
    Obstruction,
    closest_forbidden_pair,
    corollary3_families,
    find_high_degree,
    find_obstruction_t2c3c4,
    find_path_subgraph,
    find_td_obstruction,
    is_path_graph,
    is_pathwidth_le1,
    pw1_structure,
    scattered_clean,
)
from .sse import NO, SseResult, _solve_rooted, solve_extension

Finder = Callable[[Graph], "Obstruction | None"]


def enumerate_minimal_hitting_sets(g: Graph, k: int, finder: Finder) -> list[frozenset]:
    """All inclusion-minimal S with |S| ≤ k and ``finder(g - S)`` None.

    Sorted by size, then lexicographically.
    """
    found: set[frozenset] = set()
    seen: set[frozenset] = set()

    def branch(deleted: frozenset):
        if deleted in seen:
            return
        seen.add(deleted)
        rest, old = g.remove(deleted)
        obs = finder(rest)
        if obs is None:
            found.add(deleted)
            return
        if len(deleted) >= k:
            return
        for v in sorted(obs.vertices):
            branch(deleted | {old[v]})

    branch(frozenset())
    minimal = [s for s in found if not any(t < s for t in found)]
    return sorted(minimal, key=lambda s: (len(s), sorted(s)))


def _clean_check(finder: Finder) -> Callable[[Graph], bool]:
    return lambda h: finder(h) is None


def _extend_each(g: Graph, k: int, p: int, candidates: list[frozenset], seed: int, strict: bool, field=None) -> SseResult:
    for x in candidates:
        if not x:
            return SseResult("yes", frozenset(), 0)
        res = solve_extension(g, x, k, p, seed=seed, strict=strict, field=field)
        if res.yes:
            return res
    return NO


def _solve_by_hitting_sets(g: Graph, k: int, p: int, finder: Finder, seed: int, strict: bool, field=None) -> SseResult:
    if finder(g) is None:
        return SseResult("yes", frozenset(), 0)
    if k <= 0 or feasible_deletion(g, p, _clean_check(finder), strict) is None:
        return NO
    return _extend_each(g, k, p, enumerate_minimal_hitting_sets(g, k, finder), seed, strict, field)


def solve_bdds(g: Graph, k: int, p: int, eta: int, seed: int = 0, strict: bool = False, field=None) -> SseResult:
    """Delete a p-edge-connected S, |S| ≤ k, leaving maximum degree ≤ eta."""
    if eta < 0:
        raise GraphError("eta must be nonnegative")
    return _solve_by_hitting_sets(g, k, p, lambda h: find_high_degree(h, eta), seed, strict, field)


def solve_tdds(g: Graph, k: int, p: int, eta: int, seed: int = 0, strict: bool = False, field=None) -> SseResult:
    """Delete a p-edge-connected S, |S| ≤ k, leaving treedepth ≤ eta."""
    return _solve_by_hitting_sets(g, k, p, lambda h: find_td_obstruction(h, eta), seed, strict, field)


def solve_pvc(g: Graph, k: int, p: int, eta: int, seed: int = 0, strict: bool = False, field=None) -> SseResult:
    """Delete a p-edge-connected S, |S| ≤ k, leaving no path on eta vertices."""
    if eta < 2:
        raise GraphError("eta must be at least 2")
    return _solve_by_hitting_sets(g, k, p, lambda h: find_path_subgraph(h, eta), seed, strict, field)


# pathwidth one


def _cycle_guards(cycles: Sequence[frozenset], x: frozenset):
    """Transition and final guards forcing the chosen positions to hit every cycle.

    Positions are 1-based in the order handed over by the solver. A cycle
    with no vertex in that order can never be hit.
    """
    todo = [c for c in cycles if not (c & x)]

    def factory(order: Sequence[int]):
        pos = {v: t for t, v in enumerate(order, start=1)}
        ranges = []
        for c in todo:
            hit = [pos[v] for v in c if v in pos]
            if not hit:
                return (lambda a, b: False), (lambda j: False)
            ranges.append((min(hit), max(hit)))

        def guard(j_prev: int, j: int) -> bool:
            return not any(j_prev < lo and hi < j for lo, hi in ranges)

        def final_guard(j: int) -> bool:
            return not any(lo > j for lo, _ in ranges)

        return guard, final_guard

    return factory


def solve_pw1ds(g: Graph, k: int, p: int, seed: int = 0, strict: bool = False, field=None) -> SseResult:
    """Delete a p-edge-connected S, |S| ≤ k, leaving pathwidth at most one.

    First kill every T2, C3 and C4; the rest is a disjoint union of
    caterpillars and cycles with hairs, and S must additionally meet every
    remaining cycle, which the dynamic program enforces through guards on
    consecutive chosen positions of the pathwidth-one ordering.
    """
    if is_pathwidth_le1(g):
        return SseResult("yes", frozenset(), 0)
    if k <= 0 or feasible_deletion(g, p, is_pathwidth_le1, strict) is None:
        return NO
    for xp in enumerate_minimal_hitting_sets(g, k, find_obstruction_t2c3c4):
        res = _extend_pw1(g, xp, k, p, seed, strict, field)
        if res.yes:
            return res
    return NO


def _extend_pw1(g: Graph, xp: frozenset, k: int, p: int, seed: int, strict: bool, field=None) -> SseResult:
    rest, old = g.remove(xp)
    structure = pw1_structure(rest)
    cycles = [frozenset(old[v] for v in c) for c in structure.cycles]
    order = [old[v] for v in structure.ordering]
    if not cycles:
        if not xp:
            return SseResult("yes", frozenset(), 0)
        return solve_extension(g, xp, k, p, ordering=order, seed=seed, strict=strict, field=field)
    if xp:
        return _solve_rooted(g, xp, k, p, order, seed, field, guard_factory=_cycle_guards(cycles, xp))
    # no forced vertices: a single vertex on every cycle, or try each root
    if not strict and k >= 1:
        common = frozenset.intersection(*cycles)
        if common:
            return SseResult("yes", frozenset([min(common)]), 0)
    current, ids = g, list(range(g.n))
    for v in range(g.n):
        local = ids.index(v)
        local_cycles = [frozenset(ids.index(u) for u in c if u in ids) for c in cycles]
        local_order = [ids.index(u) for u in order if u in ids]
        res = _solve_rooted(current, frozenset([local]), k, p, local_order, seed, field, guard_factory=_cycle_guards(local_cycles, frozenset([local])))
        if res.yes:
            return SseResult("yes", frozenset(ids[t] for t in res.solution), res.certificate_size)
        current, keep = current.remove([local])
        ids = [ids[t] for t in keep]
    return NO


# scattered classes


def solve_scattered(
    g: Graph,
    k: int,
    p: int,
    f1: Sequence[Graph] | None = None,
    f2: Sequence[Graph] | None = None,
    lam: int | None = None,
    seed: int = 0,
    *,
    alpha: int | None = None,
    beta: int | None = None,
    strict: bool = False,
    field=None,
) -> SseResult:
    """Delete a p-edge-connected S, |S| ≤ k, so that every component of g - S
    embeds no member of f1 or embeds no member of f2.

    Without explicit families, ``alpha`` and ``beta`` select F1 = {K_{1,alpha+1}}
    and F2 = {P_beta}, with lambda = beta.
    """
    if f1 is None or f2 is None:
        if alpha is None or beta is None:
            raise GraphError("give both families or both alpha and beta")
        f1, f2 = corollary3_families(alpha, beta)
        if lam is None:
            lam = beta
    if lam is not None and not any(is_path_graph(h, lam) for h in list(f1) + list(f2)):
        raise GraphError(f"P_{lam} must belong to one of the two families")

    def finder(h: Graph) -> Obstruction | None:
        pair = closest_forbidden_pair(h, f1, f2, same_component=True)
        if pair is None:
            return None
        return Obstruction(pair.j1 | pair.j2 | frozenset(pair.path), "scattered")

    if scattered_clean(g, f1, f2):
        return SseResult("yes", frozenset(), 0)
    return _solve_by_hitting_sets(g, k, p, finder, seed, strict, field)
