"""q-representative subfamilies over linear matroids.

A member X of size s is mapped to its exterior power, the vector of s x s
minors of its columns. After truncating the host matroid to rank s + q,
``X`` extends ``Y`` (|Y| = q) iff the wedge of X and Y is nonzero, so any
subfamily whose vectors span the same space is q-representative. The
earliest-member basis of those vectors is kept.

When the number of row subsets C(s+q, s) is small the minors are computed
exactly. Otherwise each member is evaluated against random decomposable
functionals ``det(B^T A_X)``; by Cauchy-Binet these are linear in the minor
vector, so the rank of the evaluation matrix equals the true rank with high
probability once it stops growing with the number of functionals.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

import numpy as np

from .linalg import batched_det, matmul_mod, pivot_columns, row_basis
from .matroid import GroundElement, LinearMatroid, MatroidError, is_independent

EXACT_MINOR_LIMIT = 256
INITIAL_FUNCTIONALS = 16


@dataclass(frozen=True)
class SetFamily:
    member_size: int
    sets: tuple  # tuple of frozensets of GroundElement

    @classmethod
    def of(cls, sets: Iterable[Iterable], member_size: int | None = None) -> "SetFamily":
        members = []
        for s in sets:
            members.append(frozenset(GroundElement(*e) for e in s))
        if member_size is None:
            if not members:
                raise ValueError("member_size needed for an empty family")
            member_size = len(members[0])
        if any(len(s) != member_size for s in members):
            raise ValueError("all members must have the same size")
        return cls(member_size, tuple(members))

    def __len__(self) -> int:
        return len(self.sets)

    def __iter__(self):
        return iter(self.sets)


def extends(m: LinearMatroid, x: Iterable, y: Iterable) -> bool:
    """``x`` extends ``y``: disjoint with independent union."""
    x = {GroundElement(*e) for e in x}
    y = {GroundElement(*e) for e in y}
    if x & y:
        return False
    return is_independent(m, x | y)


def colex_subsets(r: int, s: int) -> list[tuple[int, ...]]:
    return sorted(combinations(range(r), s), key=lambda t: t[::-1])


def minor_vectors(mat: np.ndarray, members: np.ndarray, q: int) -> np.ndarray:
    """Rows indexed by colex row subsets, one column per member (shape ``(C(r,s), T)``)."""
    r = mat.shape[0]
    t, s = members.shape
    subsets = colex_subsets(r, s)
    if t == 0:
        return np.zeros((len(subsets), 0), dtype=np.int64)
    blocks = mat[:, members]  # (r, T, s)
    out = np.zeros((len(subsets), t), dtype=np.int64)
    for row, rows in enumerate(subsets):
        sub = blocks[list(rows)]  # (s, T, s)
        out[row] = batched_det(np.transpose(sub, (1, 0, 2)), q)
    return out


def _random_evaluations(mat: np.ndarray, members: np.ndarray, q: int, count: int, rng) -> np.ndarray:
    """``det(B_t^T A_X)`` for ``count`` random r x s matrices B_t, shape ``(count, T)``."""
    r = mat.shape[0]
    t, s = members.shape
    out = np.zeros((count, t), dtype=np.int64)
    for c in range(count):
        b = rng.integers(0, q, size=(s, r), dtype=np.int64)
        proj = matmul_mod(b, mat, q)  # (s, cols)
        sub = proj[:, members]  # (s, T, s)
        out[c] = batched_det(np.transpose(sub, (1, 0, 2)), q)
    return out


def basis_members(mat: np.ndarray, members: np.ndarray, q: int, rng=None) -> list[int]:
    """Indices of an earliest basis among the exterior vectors of ``members``.

    ``mat`` must have exactly s + q rows where s = members.shape[1].
    """
    t, s = members.shape
    if t == 0:
        return []
    r = mat.shape[0]
    if comb(r, s) <= EXACT_MINOR_LIMIT:
        return pivot_columns(minor_vectors(mat, members, q), q)
    if rng is None:
        rng = np.random.default_rng(0)
    bound = comb(r, s)
    count = min(INITIAL_FUNCTIONALS, t, bound)
    evals = _random_evaluations(mat, members, q, count, rng)
    while True:
        piv = pivot_columns(evals, q)
        if len(piv) < count or count >= min(t, bound):
            return piv
        extra = min(count, min(t, bound) - count)
        evals = np.vstack([evals, _random_evaluations(mat, members, q, extra, rng)])
        count += extra


def reduce_family(m: LinearMatroid, fam: SetFamily, q: int, seed: int = 0) -> SetFamily:
    """A q-representative subfamily of ``fam`` with at most C(s+q, q) members."""
    s = fam.member_size
    if q < 0:
        raise ValueError("q must be nonnegative")
    if s + q > m.rank:
        raise MatroidError(f"member size {s} + q {q} exceeds rank {m.rank}")
    if not fam.sets:
        return fam
    members = np.array([sorted(m.columns(x)) for x in fam.sets], dtype=np.int64).reshape(len(fam.sets), s)
    mat = row_basis(m.matrix, m.field.modulus)
    rng = np.random.default_rng(seed)
    if mat.shape[0] > s + q:
        mix = rng.integers(0, m.field.modulus, size=(s + q, mat.shape[0]), dtype=np.int64)
        mat = matmul_mod(mix, mat, m.field.modulus)
    keep = basis_members(mat, members, m.field.modulus, rng)
    return SetFamily(s, tuple(fam.sets[i] for i in keep))


def reduce_columns(mat: np.ndarray, members: Sequence[Sequence[int]], q: int, seed) -> list[int]:
    """Fast path for callers that already hold a rank-(s+q) matrix and column lists."""
    if not members:
        return []
    arr = np.array([sorted(c) for c in members], dtype=np.int64).reshape(len(members), len(members[0]))
    return basis_members(mat, arr, q, np.random.default_rng(seed))
