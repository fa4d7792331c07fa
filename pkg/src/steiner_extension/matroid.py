"""Linear matroids over a prime field.

Ground elements are ``(layer, arc)`` pairs, so the copies of an arc in the
different blocks of a direct sum never collide. A stand-alone matroid uses
layer 1 and numbers its elements ``0..size-1`` in the ``arc`` slot.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .graph import EquivalentDigraph, Graph, equivalent_digraph
from .linalg import PrimeField, columns_independent, matmul_mod, rank_mod, row_basis


class GroundElement(NamedTuple):
    layer: int
    arc: int


class MatroidError(ValueError):
    pass


@dataclass(frozen=True)
class LinearMatroid:
    field: PrimeField
    matrix: np.ndarray
    elements: tuple  # elements[c] is the ground element of column c
    rank: int
    layers: int = 1

    @classmethod
    def from_columns(cls, field: PrimeField, matrix, elements: Sequence[GroundElement], layers: int = 1) -> "LinearMatroid":
        matrix = field.reduce(matrix)
        if matrix.ndim != 2 or matrix.shape[1] != len(elements):
            raise MatroidError("matrix columns and ground elements disagree")
        if len(set(elements)) != len(elements):
            raise MatroidError("ground elements must be distinct")
        rank = rank_mod(matrix, field.modulus) if matrix.size else 0
        return cls(field, matrix, tuple(elements), rank, layers)

    @property
    def column_of(self) -> dict:
        return {e: c for c, e in enumerate(self.elements)}

    @property
    def size(self) -> int:
        return len(self.elements)

    def columns(self, s: Iterable[GroundElement]) -> list[int]:
        lookup = self.column_of
        out = []
        for e in s:
            e = GroundElement(*e)
            if e not in lookup:
                raise MatroidError(f"unknown ground element {e}")
            out.append(lookup[e])
        return out


def is_independent(m: LinearMatroid, s: Iterable[GroundElement]) -> bool:
    cols = m.columns(s)
    if len(set(cols)) != len(cols):
        return False
    if not cols:
        return True
    return columns_independent(m.matrix[:, cols], m.field.modulus)


def graphic_representation(g: Graph, ground: Sequence[tuple[int, int]], field: PrimeField) -> LinearMatroid:
    """Signed incidence columns; both orientations of an edge share a column."""
    mat = np.zeros((g.n, len(ground)), dtype=np.int64)
    for c, (u, v) in enumerate(ground):
        if not g.has_edge(u, v):
            raise MatroidError(f"arc ({u}, {v}) is not an edge")
        a, b = min(u, v), max(u, v)
        mat[a, c] = 1
        mat[b, c] = field.modulus - 1
    return LinearMatroid.from_columns(field, mat, [GroundElement(1, c) for c in range(len(ground))])


def out_partition_representation(d: EquivalentDigraph, field: PrimeField) -> LinearMatroid:
    """Column of arc (u, v) is the unit vector of its head; arcs into the root are loops."""
    mat = np.zeros((d.base.n, len(d.arcs)), dtype=np.int64)
    for c, (_, v) in enumerate(d.arcs):
        if v != d.root:
            mat[v, c] = 1
    return LinearMatroid.from_columns(field, mat, [GroundElement(1, c) for c in range(len(d.arcs))])


def uniform_representation(ground_size: int, rank: int, field: PrimeField) -> LinearMatroid:
    """Vandermonde matrix with evaluation points 1..ground_size."""
    if field.modulus <= ground_size:
        raise MatroidError(f"field of size {field.modulus} too small for {ground_size} distinct points")
    if rank < 0:
        raise MatroidError("rank must be nonnegative")
    q = field.modulus
    mat = np.zeros((rank, ground_size), dtype=np.int64)
    for c in range(ground_size):
        x = c + 1
        val = 1
        for r in range(rank):
            mat[r, c] = val
            val = val * x % q
    return LinearMatroid.from_columns(field, mat, [GroundElement(1, c) for c in range(ground_size)])


def direct_sum(parts: Sequence[LinearMatroid]) -> LinearMatroid:
    """Block-diagonal sum; part t's layers are shifted past those of parts before it."""
    if not parts:
        raise MatroidError("direct sum of nothing")
    field = parts[0].field
    if any(p.field != field for p in parts):
        raise MatroidError("all parts must share one field")
    rows = sum(p.matrix.shape[0] for p in parts)
    cols = sum(p.size for p in parts)
    mat = np.zeros((rows, cols), dtype=np.int64)
    elements = []
    r = c = 0
    offset = 0
    for part in parts:
        pr, pc = part.matrix.shape[0], part.size
        mat[r : r + pr, c : c + pc] = part.matrix
        elements += [GroundElement(e.layer + offset, e.arc) for e in part.elements]
        r += pr
        c += pc
        offset += part.layers
    return LinearMatroid(field, mat, tuple(elements), sum(p.rank for p in parts), offset)


def truncate(m: LinearMatroid, rank: int, seed: int = 0) -> LinearMatroid:
    """Randomised truncation to ``rank``.

    Multiplies a row basis by a seeded uniform random ``rank x rank(m)``
    matrix. Sets of size at most ``rank`` keep their status with
    probability at least ``1 - rank(m) * rank / q``.
    """
    if rank > m.rank:
        raise MatroidError(f"cannot truncate a rank-{m.rank} matroid to rank {rank}")
    if rank < 0:
        raise MatroidError("rank must be nonnegative")
    q = m.field.modulus
    basis = row_basis(m.matrix, q)
    if rank == m.rank:
        return LinearMatroid(m.field, basis, m.elements, rank, m.layers)
    rng = np.random.default_rng(seed)
    mix = rng.integers(0, q, size=(rank, basis.shape[0]), dtype=np.int64)
    mat = matmul_mod(mix, basis, q)
    return LinearMatroid(m.field, mat, m.elements, rank_mod(mat, q) if rank else 0, m.layers)


@dataclass(frozen=True)
class ArcTriple:
    arc: int
    i: int
    elements: tuple

    @classmethod
    def of(cls, arc: int, i: int, p: int) -> "ArcTriple":
        return cls(arc, i, (GroundElement(2 * i - 1, arc), GroundElement(2 * i, arc), GroundElement(2 * p + 1, arc)))


def sse_full_matroid(g: Graph, root: int, k: int, p: int, field: PrimeField) -> tuple[LinearMatroid, EquivalentDigraph]:
    """The untruncated sum: p graphic/out-partition pairs plus a rank p(k-1) uniform block."""
    d = equivalent_digraph(g, root)
    graphic = graphic_representation(g, d.arcs, field)
    outpart = out_partition_representation(d, field)
    uniform = uniform_representation(len(d.arcs), p * (k - 1), field)
    parts = []
    for _ in range(p):
        parts += [graphic, outpart]
    parts.append(uniform)
    return direct_sum(parts), d


def build_sse_matroid(g: Graph, root: int, k: int, p: int, field: PrimeField, seed: int = 0):
    """Truncated matroid of rank 3p(k-1) and the ``(arc, i) -> ArcTriple`` lookup."""
    if k < 2 or p < 1:
        raise MatroidError("need k >= 2 and p >= 1")
    full, d = sse_full_matroid(g, root, k, p, field)
    target = 3 * p * (k - 1)
    if full.rank < target:
        raise MatroidError(f"direct sum has rank {full.rank} < 3p(k-1) = {target}")
    hat = truncate(full, target, seed)
    triples = {(a, i): ArcTriple.of(a, i, p) for a in range(len(d.arcs)) for i in range(1, p + 1)}
    return hat, triples
