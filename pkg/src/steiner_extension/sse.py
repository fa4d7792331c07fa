"""Steiner subgraph extension by representative-family dynamic programming.

Given terminals X, the solver looks for S ⊇ X with |S| = k' whose equivalent
digraph packs p arc-disjoint out-branchings rooted inside X. A packing is
encoded as a basis of the truncated direct-sum matroid of rank 3p(k'-1):
arc a used in branching i contributes the triple F_{a,i}.

Vertices of G - X are processed along an ordering. A table slot records
how many non-terminal vertices were chosen (i), the last chosen position
(j), the number of matroid elements (q) and the chosen vertices that still
have neighbours later in the ordering (the frontier). Two partial solutions
in one slot admit exactly the same future transitions, so each slot can be
cut down to a representative family.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Callable, Iterable, Sequence

import numpy as np

from .connectivity import feasible_superset, is_p_edge_connected
from .graph import Graph, Ordering, degeneracy_ordering, equivalent_digraph
from .linalg import PrimeField
from .matroid import MatroidError, build_sse_matroid
from .repfam import reduce_columns

DEFAULT_ARC_CAP = 14
REDUCE_ABOVE = 4
REDUCE_MAX = 400


class SseError(ValueError):
    pass


@dataclass(frozen=True)
class SseResult:
    status: str  # "yes" or "no"
    solution: frozenset | None = None
    certificate_size: int | None = None

    @property
    def yes(self) -> bool:
        return self.status == "yes"


NO = SseResult("no")


@dataclass(frozen=True)
class DpSlot:
    """Slot key. ``frontier`` is the set of chosen vertices with a later neighbour."""

    i: int
    j: int
    q: int
    frontier: frozenset


@dataclass
class DpTable:
    slots: dict = field(default_factory=dict)  # DpSlot -> list of members
    positions: tuple = ()  # positions[j-1] = vertex v_j
    back: tuple = ()  # back[j-1] = A_j

    def members(self, slot: DpSlot) -> list:
        return self.slots.get(slot, [])

    def entries(self, i: int, j: int, q: int, y: Iterable[int], z: Iterable[int] = (), ell: int | None = None) -> list:
        """Members with the classic slot signature ((i, j, q, Y), (Z, ell)).

        Y and Z are read off each member's vertex set, so this is a view
        over the frontier-keyed storage. A chosen vertex that has not yet
        received an arc is invisible here.
        """
        y, z = frozenset(y), frozenset(z)
        a_j = self.back[j - 1] if j >= 1 else frozenset()
        a_l = self.back[ell - 1] if ell is not None and 1 <= ell <= len(self.back) else frozenset()
        out = []
        for slot, fam in self.slots.items():
            if (slot.i, slot.j, slot.q) != (i, j, q):
                continue
            for member in fam:
                verts = member_vertices(member, self.arcs)
                if verts & a_j == y and verts & a_l == z:
                    out.append(member)
        return out

    arcs: tuple = ()


def member_vertices(member: Iterable[tuple[int, int]], arcs: Sequence[tuple[int, int]]) -> frozenset:
    out = set()
    for a, _ in member:
        out.update(arcs[a])
    return frozenset(out)


def back_neighbor_sets(g: Graph, x: Iterable[int], ordering: Sequence[int]) -> list[frozenset]:
    """A_j: earlier neighbours of the j-th vertex of ``ordering``, terminals excluded."""
    x = set(x)
    seen: set[int] = set()
    out = []
    for v in ordering:
        out.append(frozenset(w for w in g.neighbors(v) if w in seen and w not in x))
        seen.add(v)
    return out


class _Packing:
    """Incremental structural independence for p partial out-branchings.

    Equivalent to independence in the untruncated direct sum: per branching
    a forest (graphic layer) with distinct non-root heads (out-partition
    layer), every arc used at most once (uniform layer) and at most
    p(k-1) arcs in total.
    """

    __slots__ = ("parent", "heads", "used", "count")

    def __init__(self, p: int, n: int):
        self.parent = [list(range(n)) for _ in range(p)]
        self.heads = [set() for _ in range(p)]
        self.used: set[int] = set()
        self.count = 0

    def copy(self) -> "_Packing":
        c = _Packing.__new__(_Packing)
        c.parent = [list(par) for par in self.parent]
        c.heads = [set(h) for h in self.heads]
        c.used = set(self.used)
        c.count = self.count
        return c

    @staticmethod
    def _find(par, v):
        while par[v] != v:
            par[v] = par[par[v]]
            v = par[v]
        return v

    def can_add(self, a: int, h: int, arc: tuple[int, int], root: int, limit: int) -> bool:
        u, v = arc
        if a in self.used or v == root or self.count >= limit:
            return False
        if v in self.heads[h - 1]:
            return False
        par = self.parent[h - 1]
        return self._find(par, u) != self._find(par, v)

    def add(self, a: int, h: int, arc: tuple[int, int]) -> None:
        u, v = arc
        par = self.parent[h - 1]
        par[self._find(par, u)] = self._find(par, v)
        self.heads[h - 1].add(v)
        self.used.add(a)
        self.count += 1


@dataclass
class DpContext:
    graph: Graph
    terminals: frozenset
    k: int
    p: int
    root: int
    ordering: tuple
    arcs: tuple
    arc_index: dict
    matrix: np.ndarray
    modulus: int
    rank: int
    seed: int
    arc_cap: int = DEFAULT_ARC_CAP
    guard: Callable[[int, int], bool] | None = None
    final_guard: Callable[[int], bool] | None = None

    @property
    def target_i(self) -> int:
        return self.k - len(self.terminals)

    def columns(self, member) -> list[int]:
        na = len(self.arcs)
        p = self.p
        cols = []
        for a, h in member:
            cols += [(2 * h - 2) * na + a, (2 * h - 1) * na + a, 2 * p * na + a]
        return cols

    def packing_of(self, member) -> _Packing:
        pk = _Packing(self.p, self.graph.n)
        for a, h in sorted(member):
            pk.add(a, h, self.arcs[a])
        return pk


def _slot_seed(ctx: DpContext, slot: DpSlot) -> list[int]:
    return [ctx.seed, slot.i, slot.j, slot.q, sum(1 << v for v in slot.frontier)]


def _reduce(ctx: DpContext, slot: DpSlot, fam: list) -> list:
    """Representative reduction of one slot (budget rank - q).

    Skipped for tiny families and for large ones that cannot shrink below
    the C(rank, q) bound, where the exterior-power basis costs more than
    it saves.
    """
    if len(fam) <= REDUCE_ABOVE:
        return fam
    if len(fam) > REDUCE_MAX and len(fam) <= comb(ctx.rank, slot.q):
        return fam
    keep = reduce_columns(ctx.matrix, [ctx.columns(mem) for mem in fam], ctx.modulus, _slot_seed(ctx, slot))
    return [fam[t] for t in keep]


def _viable(ctx: DpContext, pk: _Packing, present: set[int], open_now: set[int]) -> bool:
    """Can this partial packing still grow into p spanning out-branchings?

    A closed vertex (no arcs can reach it any more) needs its in-arc in
    every branching, and every forest component needs an open vertex.
    """
    for h in range(ctx.p):
        heads = pk.heads[h]
        for v in present:
            if v not in open_now and v != ctx.root and v not in heads:
                return False
        par = pk.parent[h]
        live = {_Packing._find(par, v) for v in present if v in open_now}
        if any(_Packing._find(par, v) not in live for v in present):
            return False
    return True


def _arc_choices(ctx: DpContext, base: frozenset, arcs: list[int], budget: int, check=None):
    """Assignments of arcs to branchings (or skip) that keep ``base`` independent.

    The empty assignment is allowed: a vertex whose neighbours in the
    solution all come later receives its arcs from them.

    Yields ``(choice, packing)`` with the packing of ``base`` plus the choice.
    """
    limit = ctx.p * (ctx.k - 1)
    pk0 = ctx.packing_of(base)
    out = []

    def rec(idx: int, pk: _Packing, chosen: list):
        if idx == len(arcs):
            if check is None or check(pk):
                out.append((tuple(chosen), pk))
            return
        rec(idx + 1, pk, chosen)
        a = arcs[idx]
        if len(chosen) == budget:
            return
        for h in range(1, ctx.p + 1):
            if pk.can_add(a, h, ctx.arcs[a], ctx.root, limit):
                nxt = pk.copy()
                nxt.add(a, h, ctx.arcs[a])
                rec(idx + 1, nxt, chosen + [(a, h)])

    rec(0, pk0, [])
    return out


def _signature(pk: _Packing, open_now: Iterable[int]) -> tuple:
    """What the future can see of a packing: per branching, the component
    partition of the open vertices and which of them already have an in-arc.

    Branchings are interchangeable, so the per-branching parts are sorted.
    """
    open_sorted = sorted(open_now)
    per = []
    for par, heads in zip(pk.parent, pk.heads):
        groups: dict[int, list[int]] = {}
        for v in open_sorted:
            groups.setdefault(_Packing._find(par, v), []).append(v)
        per.append((tuple(sorted(tuple(g) for g in groups.values())), tuple(v for v in open_sorted if v in heads)))
    return tuple(sorted(per))


def init_base_slots(ctx: DpContext) -> DpTable:
    """Slots (0, 0, q, ∅): independent arc-triple sets inside D_G[X]."""
    table = DpTable(positions=ctx.ordering, arcs=ctx.arcs)
    inner = [a for a, (u, v) in enumerate(ctx.arcs) if u in ctx.terminals and v in ctx.terminals]
    limit = ctx.p * (ctx.k - 1)
    level = [frozenset()]
    q = 0
    while level:
        slot = DpSlot(0, 0, q, frozenset())
        level = _reduce(ctx, slot, level)
        table.slots[slot] = level
        if q + 3 > ctx.rank or q // 3 >= limit:
            break
        nxt: dict = {}
        for mem in level:
            pk = ctx.packing_of(mem)
            for a in inner:
                for h in range(1, ctx.p + 1):
                    if pk.can_add(a, h, ctx.arcs[a], ctx.root, limit):
                        grown = pk.copy()
                        grown.add(a, h, ctx.arcs[a])
                        nxt.setdefault(_signature(grown, ctx.terminals), mem | {(a, h)})
        level = sorted(nxt.values(), key=sorted)
        q += 3
    return table


def transition_slot(ctx: DpContext, table: DpTable, j: int, frontier_after: Sequence[frozenset], open_x: Sequence[set]):
    """Fill every slot with last position ``j``; returns a finished family or None.

    Sources are slots (i-1, j', q', W') with j' < j; the arcs added for v_j
    go between v_j and X ∪ (W' ∩ A_j).
    """
    v = ctx.ordering[j - 1]
    a_j = table.back[j - 1]
    fr_j = frontier_after[j]
    target = ctx.target_i
    candidates: dict[DpSlot, dict] = {}
    sources = sorted((s for s in table.slots if s.j < j and s.i < target), key=lambda s: (s.j, s.i, s.q, sorted(s.frontier)))
    for src in sources:
        if ctx.guard is not None and not ctx.guard(src.j, j):
            continue
        fam = table.slots[src]
        if not fam:
            continue
        i_new = src.i + 1
        if target - i_new > len(ctx.ordering) - j:
            continue
        y = src.frontier & a_j
        nbrs = sorted(ctx.terminals.union(y) & ctx.graph.neighbors(v))
        arcs = []
        for u in nbrs:
            arcs += [ctx.arc_index[(u, v)], ctx.arc_index[(v, u)]]
        if len(arcs) > ctx.arc_cap:
            raise SseError(f"{len(arcs)} arcs at one vertex exceed the cap of {ctx.arc_cap}")
        # every later chosen vertex needs at least one triple
        budget_q = ctx.rank - 3 * (target - i_new)
        new_w = frozenset((src.frontier & fr_j) | ({v} & fr_j))
        open_now = set(new_w) | open_x[j]
        slot_base = (i_new, j, new_w)
        for mem in fam:
            room = (budget_q - src.q) // 3
            if room < 0:
                continue
            check = None
            if i_new < target:
                # chosen vertices still waiting for arcs sit in the frontier
                present = set(member_vertices(mem, ctx.arcs)) | set(ctx.terminals) | set(src.frontier) | {v}
                check = lambda pk, present=present: _viable(ctx, pk, present, open_now)
            for choice, pk in _arc_choices(ctx, mem, arcs, room, check):
                q_new = src.q + 3 * len(choice)
                if i_new == target and q_new != ctx.rank:
                    continue
                slot = DpSlot(slot_base[0], j, q_new, new_w)
                key = _signature(pk, open_now) if i_new < target else mem.union(choice)
                candidates.setdefault(slot, {}).setdefault(key, mem.union(choice))
    finished = None
    for slot in sorted(candidates, key=lambda s: (s.i, s.q, sorted(s.frontier))):
        fam = list(candidates[slot].values())
        fam = _reduce(ctx, slot, fam)
        table.slots[slot] = fam
        if slot.i == target and slot.q == ctx.rank and finished is None:
            if ctx.final_guard is None or ctx.final_guard(j):
                finished = fam
    return finished


def _frontiers(g: Graph, order: Sequence[int]) -> list[frozenset]:
    """frontier_after[j]: vertices among the first j with a neighbour after position j."""
    pos = {v: t for t, v in enumerate(order, start=1)}
    last = {v: max((pos[w] for w in g.neighbors(v) if w in pos), default=0) for v in order}
    out = [frozenset()]
    for j in range(1, len(order) + 1):
        out.append(frozenset(v for v in order[:j] if last[v] > j))
    return out


def _open_terminals(g: Graph, x: frozenset, order: Sequence[int]) -> list[set]:
    """open_x[j]: terminals with a neighbour at a position after j."""
    pos = {v: t for t, v in enumerate(order, start=1)}
    last = {t: max((pos[w] for w in g.neighbors(t) if w in pos), default=0) for t in x}
    return [{t for t in x if last[t] > j} for j in range(len(order) + 1)]


def run_dp(
    g: Graph,
    x: frozenset,
    k: int,
    p: int,
    order: Sequence[int],
    field: PrimeField,
    seed: int,
    *,
    guard=None,
    final_guard=None,
    arc_cap: int = DEFAULT_ARC_CAP,
    keep_table: bool = False,
):
    """One exact-size run for |S| = k on a connected graph; returns (solution or None, table)."""
    root = min(x)
    try:
        hat, _ = build_sse_matroid(g, root, k, p, field, seed)
    except MatroidError:
        return None, None
    d = equivalent_digraph(g, root)
    ctx = DpContext(
        graph=g,
        terminals=frozenset(x),
        k=k,
        p=p,
        root=root,
        ordering=tuple(order),
        arcs=d.arcs,
        arc_index=d.arc_index(),
        matrix=hat.matrix,
        modulus=field.modulus,
        rank=hat.rank,
        seed=seed,
        arc_cap=arc_cap,
        guard=guard,
        final_guard=final_guard,
    )
    if hat.rank != 3 * p * (k - 1):
        return None, None
    table = init_base_slots(ctx)
    table.back = tuple(back_neighbor_sets(g, x, order))
    tried = set()

    def accept(fam):
        for mem in fam:
            verts = member_vertices(mem, ctx.arcs) | x
            if verts in tried:
                continue
            tried.add(verts)
            if len(verts) == k and is_p_edge_connected(g, verts, p, strict=True):
                return verts
        return None

    if ctx.target_i == 0:
        base = table.slots.get(DpSlot(0, 0, ctx.rank, frozenset()), [])
        if ctx.final_guard is None or ctx.final_guard(0):
            return accept(base), table
        return None, table
    fronts = _frontiers(g, order)
    open_x = _open_terminals(g, x, order)
    for j in range(1, len(order) + 1):
        fam = transition_slot(ctx, table, j, fronts, open_x)
        if fam:
            found = accept(fam)
            if found is not None:
                return found, table
    return None, table


def _prune_region(g: Graph, x: frozenset, region: set[int], k: int, p: int) -> set[int]:
    """Drop vertices too far from a terminal or of degree below p inside the region."""
    while True:
        before = len(region)
        for t in x:
            dist = g.bfs_distances([t], region)
            region = {v for v in region if dist.get(v, k) <= k - 1}
        changed = True
        while changed:
            changed = False
            for v in sorted(region):
                if sum(1 for w in g.neighbors(v) if w in region) < p:
                    region.discard(v)
                    changed = True
        if not x <= region:
            return set()
        if len(region) == before:
            return region


def _restrict_ordering(ordering: Ordering | Sequence[int] | None, keep: set[int]) -> list[int] | None:
    if ordering is None:
        return None
    seq = ordering.sequence if isinstance(ordering, Ordering) else ordering
    return [v for v in seq if v in keep]


def _solve_rooted(
    g: Graph,
    x: frozenset,
    k: int,
    p: int,
    ordering,
    seed: int,
    field: PrimeField | None,
    guard_factory=None,
    arc_cap: int = DEFAULT_ARC_CAP,
) -> SseResult:
    """Nonempty terminals, strict definition, at least two vertices sought."""
    comp = next(c for c in g.components() if x & set(c))
    if not x <= set(comp):
        return NO
    sub, old_of_new = g.induced(comp)
    new_of_old = {o: t for t, o in enumerate(old_of_new)}
    xs = frozenset(new_of_old[v] for v in x)
    region = feasible_superset(sub, xs, p, strict=True)
    if region is None:
        return NO
    region = _prune_region(sub, xs, set(region), k, p)
    if not region:
        return NO
    comps = [c for c in sub.components(region) if xs & set(c)]
    if len(comps) != 1 or not xs <= set(comps[0]):
        return NO
    region = set(comps[0])
    h, h_old = sub.induced(sorted(region))
    h_new = {o: t for t, o in enumerate(h_old)}
    hx = frozenset(h_new[v] for v in xs)
    if field is None:
        field = PrimeField.for_graph(g.n, g.m)
    user_order = _restrict_ordering(ordering, {old_of_new[o] for o in region} - x)
    if user_order is None:
        order = list(degeneracy_ordering(h, hx).sequence)
    else:
        order = [h_new[new_of_old[v]] for v in user_order]
    to_g = [old_of_new[o] for o in h_old]
    guard = final_guard = None
    if guard_factory is not None:
        guard, final_guard = guard_factory([to_g[v] for v in order])
    for kk in range(max(len(hx), 2, p + 1), min(k, h.n) + 1):
        found, _ = run_dp(h, hx, kk, p, order, field, seed * 1009 + kk, guard=guard, final_guard=final_guard, arc_cap=arc_cap)
        if found is not None:
            sol = frozenset(to_g[v] for v in found)
            return SseResult("yes", sol, 3 * p * (kk - 1))
    return NO


def solve_extension(
    g: Graph,
    x: Iterable[int],
    k: int,
    p: int,
    ordering: Ordering | Sequence[int] | None = None,
    seed: int = 0,
    *,
    strict: bool = False,
    field: PrimeField | None = None,
    arc_cap: int = DEFAULT_ARC_CAP,
) -> SseResult:
    """Is there S ⊇ x with |S| ≤ k and g[S] p-edge-connected?

    A single vertex counts as p-edge-connected unless ``strict``. An
    ``ordering`` of the non-terminal vertices may be supplied (for instance
    one derived from a tree decomposition); otherwise a degeneracy ordering
    of the relevant part of g - x is used.
    """
    x = frozenset(x)
    if p < 1:
        raise SseError("p must be at least 1")
    if any(not 0 <= v < g.n for v in x):
        raise SseError("terminal out of range")
    if k < len(x):
        return NO
    if x and is_p_edge_connected(g, x, p, strict):
        return SseResult("yes", x, 0)
    if k == 0 or g.n == 0:
        return NO
    if not strict and len(x) <= 1:
        return SseResult("yes", x or frozenset({0}), 0)
    if x:
        return _solve_rooted(g, x, k, p, ordering, seed, field, arc_cap=arc_cap)
    # no terminals: try each vertex as the root, then forget it
    remaining = list(range(g.n))
    current, old_of_new = g, list(range(g.n))
    for v in remaining:
        local = old_of_new.index(v)
        res = _solve_rooted(current, frozenset({local}), k, p, _map_order(ordering, old_of_new), seed, field, arc_cap=arc_cap)
        if res.yes:
            return SseResult("yes", frozenset(old_of_new[t] for t in res.solution), res.certificate_size)
        current, keep = current.remove([local])
        old_of_new = [old_of_new[t] for t in keep]
    return NO


def _map_order(ordering, old_of_new):
    if ordering is None:
        return None
    seq = ordering.sequence if isinstance(ordering, Ordering) else ordering
    local = {o: t for t, o in enumerate(old_of_new)}
    return [local[v] for v in seq if v in local]
