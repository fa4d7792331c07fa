"""Prime-field linear algebra on int64 numpy arrays.

All routines keep entries reduced modulo the field prime. The prime is
capped below 2**25 so that products of two entries and short dot
products stay inside int64.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

MAX_MODULUS = 1 << 25


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    if q % 2 == 0:
        return q == 2
    f = 3
    while f * f <= q:
        if q % f == 0:
            return False
        f += 2
    return True


def next_prime(above: int) -> int:
    """Smallest prime strictly greater than ``above``."""
    q = max(above + 1, 2)
    while not is_prime(q):
        q += 1
    return q


@dataclass(frozen=True)
class PrimeField:
    modulus: int

    def __post_init__(self):
        if not is_prime(self.modulus):
            raise ValueError(f"{self.modulus} is not prime")
        if self.modulus >= MAX_MODULUS:
            raise ValueError(f"field prime must be below {MAX_MODULUS}")

    @classmethod
    def for_graph(cls, n: int, m: int, floor: int = 10**6) -> "PrimeField":
        return cls(next_prime(max(n * n, 2 * m, floor)))

    def reduce(self, a) -> np.ndarray:
        return np.asarray(a, dtype=np.int64) % self.modulus


def matmul_mod(a: np.ndarray, b: np.ndarray, q: int) -> np.ndarray:
    """``a @ b mod q`` without int64 overflow for inner dimensions of any size."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    inner = a.shape[1] if a.ndim == 2 else a.shape[-1]
    step = max(1, (1 << 62) // ((q - 1) * (q - 1) + 1))
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for s in range(0, inner, step):
        out = (out + a[:, s : s + step] @ b[s : s + step, :]) % q
    return out


def inv_mod(x: np.ndarray, q: int) -> np.ndarray:
    """Elementwise inverse via Fermat; zero maps to zero."""
    x = np.asarray(x, dtype=np.int64) % q
    result = np.ones_like(x)
    base = x.copy()
    e = q - 2
    while e:
        if e & 1:
            result = result * base % q
        base = base * base % q
        e >>= 1
    return np.where(x == 0, 0, result)


def rank_mod(a: np.ndarray, q: int) -> int:
    return len(pivot_columns(a, q))


def pivot_columns(a: np.ndarray, q: int) -> list[int]:
    """Columns that enlarge the rank when scanned left to right.

    These form the lexicographically earliest column basis of ``a``.
    """
    a = np.array(a, dtype=np.int64) % q
    if a.size == 0:
        return []
    rows, cols = a.shape
    pivots = []
    r = 0
    c = 0
    while r < rows and c < cols:
        nz = a[r:, c:] != 0
        hit = nz.any(axis=0)
        if not hit.any():
            break
        c += int(hit.argmax())
        pr = r + int((a[r:, c] != 0).argmax())
        if pr != r:
            a[[r, pr]] = a[[pr, r]]
        a[r] = a[r] * inv_mod(a[r, c], q) % q
        below = a[r + 1 :, c].copy()
        if below.any():
            a[r + 1 :] = (a[r + 1 :] - below[:, None] * a[r][None, :]) % q
        pivots.append(c)
        r += 1
        c += 1
    return pivots


def row_basis(a: np.ndarray, q: int) -> np.ndarray:
    """Rows spanning the row space of ``a`` (an echelon form, zero rows dropped)."""
    a = np.array(a, dtype=np.int64) % q
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nzr = np.nonzero(a[r:, c])[0]
        if nzr.size == 0:
            continue
        pr = r + int(nzr[0])
        if pr != r:
            a[[r, pr]] = a[[pr, r]]
        a[r] = a[r] * inv_mod(a[r, c], q) % q
        below = a[r + 1 :, c].copy()
        if below.any():
            a[r + 1 :] = (a[r + 1 :] - below[:, None] * a[r][None, :]) % q
        r += 1
    return a[:r]


def columns_independent(a: np.ndarray, q: int) -> bool:
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[1] == 0:
        return True
    if a.shape[1] > a.shape[0]:
        return False
    return rank_mod(a, q) == a.shape[1]


def batched_det(mats: np.ndarray, q: int) -> np.ndarray:
    """Determinants of a stack of square matrices, shape ``(B, s, s)``."""
    a = np.array(mats, dtype=np.int64) % q
    b, s, s2 = a.shape
    if s != s2:
        raise ValueError("batched_det needs square matrices")
    det = np.ones(b, dtype=np.int64)
    if s == 0 or b == 0:
        return det
    idx = np.arange(b)
    for c in range(s):
        nz = a[:, c:, c] != 0
        piv = c + nz.argmax(axis=1)
        swap = piv != c
        if swap.any():
            top = a[idx, c, :].copy()
            a[idx, c, :] = a[idx, piv, :]
            a[idx, piv, :] = top
            det = np.where(swap, (q - det) % q, det)
        pv = a[:, c, c]
        det = det * pv % q
        if c + 1 < s:
            f = a[:, c + 1 :, c] * inv_mod(pv, q)[:, None] % q
            a[:, c + 1 :, c:] = (a[:, c + 1 :, c:] - f[:, :, None] * a[:, None, c, c:]) % q
    return det
