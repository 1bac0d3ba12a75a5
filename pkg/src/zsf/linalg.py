"""Exact linear algebra over F_q.

Small solver-internal work uses the pure-Python `Eliminator` (works for any q).
Bulk basis extraction (`max_independent`) runs on numpy arrays: int64 when the
products fit, Python-object arrays otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionMismatch, NoDependency, ZeroVector
from .ff import Modulus, inverse, modq

FieldVec = tuple


class VecFamily:
    """An ordered family v_0..v_{m-1} in F_q^n, stored as tuples of residues in [0, q)."""

    __slots__ = ("q", "n", "rows")

    def __init__(self, q: int | Modulus, rows: Iterable[Sequence[int]], n: int | None = None):
        q = modq(q)
        self.q = q
        self.rows = tuple(tuple(int(x) % q for x in r) for r in rows)
        if n is None:
            if not self.rows:
                raise DimensionMismatch("empty family needs an explicit dimension")
            n = len(self.rows[0])
        self.n = n
        for r in self.rows:
            if len(r) != n:
                raise DimensionMismatch(f"expected dimension {n}, got {len(r)}")

    @classmethod
    def trusted(cls, q: int, rows, n: int) -> "VecFamily":
        # rows already reduced tuples; skips validation in hot paths
        obj = cls.__new__(cls)
        obj.q, obj.n, obj.rows = q, n, tuple(rows)
        return obj

    @property
    def m(self) -> int:
        return len(self.rows)

    def __len__(self):
        return len(self.rows)

    def __getitem__(self, i):
        return self.rows[i]

    def __iter__(self):
        return iter(self.rows)

    def __eq__(self, other):
        return isinstance(other, VecFamily) and (self.q, self.n, self.rows) == (other.q, other.n, other.rows)

    def __repr__(self):
        return f"VecFamily(q={self.q}, n={self.n}, m={self.m})"

    def sub(self, idx: Sequence[int]) -> "VecFamily":
        return VecFamily.trusted(self.q, [self.rows[i] for i in idx], self.n)

    def combine(self, coeffs: dict) -> tuple:
        """Sum of coeffs[i] * v_i, reduced mod q."""
        return lin_comb(self.rows, coeffs, self.q, self.n)


def as_family(F, q: int | None = None) -> VecFamily:
    if isinstance(F, VecFamily):
        return F
    if q is None:
        raise TypeError("a raw row list needs q")
    return VecFamily(q, F)


def lin_comb(rows, coeffs: dict, q: int, n: int) -> tuple:
    acc = [0] * n
    for i, c in coeffs.items():
        if c % q:
            v = rows[i]
            for j in range(n):
                if v[j]:
                    acc[j] += c * v[j]
    return tuple(x % q for x in acc)


def is_zero(v) -> bool:
    return not any(v)


def add_vec(a, b, q):
    return tuple((x + y) % q for x, y in zip(a, b))


def scale_vec(c, a, q):
    return tuple(c * x % q for x in a)


class Eliminator:
    """Incremental row echelon form that remembers how each pivot row was built.

    Every stored row has a 1 at its pivot and zeros before it; `combo` maps
    original indices to coefficients with row = sum(combo[i] * v_i).
    """

    def __init__(self, q: int, n: int):
        self.q = q
        self.n = n
        self.pivots: dict[int, tuple[list, dict]] = {}
        self.order: list[int] = []  # original indices in insertion order

    @property
    def rank(self):
        return len(self.pivots)

    def reduce(self, vec) -> tuple[list, dict]:
        """Return (residual, combo) with residual = vec - sum(combo[i] v_i)."""
        q = self.q
        r = list(vec)
        combo: dict[int, int] = {}
        for p in range(self.n):
            f = r[p] % q
            if not f or p not in self.pivots:
                continue
            row, rc = self.pivots[p]
            for j in range(p, self.n):
                if row[j]:
                    r[j] = (r[j] - f * row[j]) % q
            for i, c in rc.items():
                combo[i] = (combo.get(i, 0) + f * c) % q
        return [x % q for x in r], combo

    def insert(self, idx: int, vec) -> dict | None:
        """Insert v_idx; return None if it was independent, else a dependency map."""
        q = self.q
        r, combo = self.reduce(vec)
        lead = next((j for j, x in enumerate(r) if x), None)
        if lead is None:
            dep = {i: (-c) % q for i, c in combo.items() if c % q}
            dep[idx] = 1
            return dep
        inv = inverse(r[lead], q)
        row = [x * inv % q for x in r]
        rc = {i: (-c * inv) % q for i, c in combo.items() if c % q}
        rc[idx] = inv
        self.pivots[lead] = (row, rc)
        self.order.append(idx)
        return None

    def coords(self, vec) -> dict | None:
        """Coefficients over inserted indices expressing vec, or None if outside the span."""
        r, combo = self.reduce(vec)
        if any(r):
            return None
        return {i: c for i, c in combo.items() if c}


def find_dependency(F) -> dict:
    """Nonzero alpha with sum alpha_i v_i = 0 among the first rank+1 vectors."""
    F = as_family(F)
    el = Eliminator(F.q, F.n)
    for i, v in enumerate(F.rows):
        dep = el.insert(i, v)
        if dep is not None:
            return dep
    raise NoDependency(f"{F.m} vectors are linearly independent")


def rank(F) -> int:
    F = as_family(F)
    el = Eliminator(F.q, F.n)
    for i, v in enumerate(F.rows):
        el.insert(i, v)
    return el.rank


def greedy_basis(F) -> tuple[list[int], Eliminator]:
    """Lowest-index maximal independent subset plus the eliminator holding it."""
    F = as_family(F)
    el = Eliminator(F.q, F.n)
    for i, v in enumerate(F.rows):
        el.insert(i, v)
    return list(el.order), el


@dataclass(frozen=True)
class SpanSplit:
    pivot_coord: int
    pivot_vec: tuple
    components: tuple  # of (c_i, w_i)

    def reduced_family(self, q: int) -> VecFamily:
        """The w_i with the pivot coordinate dropped (dimension n-1)."""
        p = self.pivot_coord
        n = len(self.pivot_vec) - 1
        return VecFamily.trusted(q, [w[:p] + w[p + 1:] for _, w in self.components], n)


def span_split(u, F, q: int | None = None) -> SpanSplit:
    F = as_family(F, q)
    q = F.q
    u = tuple(x % q for x in u)
    p = next((j for j, x in enumerate(u) if x), None)
    if p is None:
        raise ZeroVector("span_split needs a nonzero pivot vector")
    inv = inverse(u[p], q)
    comps = []
    for v in F.rows:
        c = v[p] * inv % q
        w = tuple((x - c * y) % q for x, y in zip(v, u))
        comps.append((c, w))
    return SpanSplit(p, u, tuple(comps))


# ---- numpy kernels for basis extraction ----

def _dtype(q: int):
    return np.int64 if q < (1 << 31) else object


def to_matrix(rows, q: int, n: int) -> np.ndarray:
    """Columns are the family's vectors (n x m), as in the matrix H."""
    if not rows:
        return np.zeros((n, 0), dtype=_dtype(q))
    return np.array([list(r) for r in rows], dtype=_dtype(q)).T.copy()


def matmul_mod(A: np.ndarray, B: np.ndarray, q: int) -> np.ndarray:
    inner = A.shape[1]
    if A.dtype != object and inner * (q - 1) ** 2 < (1 << 63):
        return (A @ B) % q
    C = A.astype(object) @ B.astype(object)
    return np.asarray(C % q, dtype=_dtype(q)).reshape(A.shape[0], B.shape[1])


def inv_matrix_mod(G: np.ndarray, q: int) -> np.ndarray | None:
    """Gauss-Jordan inverse mod q, or None when singular."""
    r = G.shape[0]
    M = np.concatenate([G.astype(_dtype(q)) % q, np.eye(r, dtype=_dtype(q))], axis=1)
    for col in range(r):
        nz = [i for i in range(col, r) if M[i, col] % q]
        if not nz:
            return None
        p = nz[0]
        if p != col:
            M[[col, p]] = M[[p, col]]
        M[col] = (M[col] * inverse(int(M[col, col]), q)) % q
        f = M[:, col].copy()
        f[col] = 0
        M = (M - np.outer(f, M[col])) % q
    return M[:, r:]


def _rref_pivot_columns(M: np.ndarray, q: int) -> list[int]:
    M = M.copy() % q
    n, m = M.shape
    pivots = []
    r = 0
    for col in range(m):
        if r == n:
            break
        nz = np.nonzero(M[r:, col] % q)[0]
        if len(nz) == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            M[[r, p]] = M[[p, r]]
        M[r] = (M[r] * inverse(int(M[r, col]), q)) % q
        f = M[:, col].copy()
        f[r] = 0
        if np.any(f):
            M = (M - np.outer(f, M[r])) % q
        pivots.append(col)
        r += 1
    return pivots


def project_out(U: np.ndarray, V: np.ndarray, q: int) -> np.ndarray:
    """Residuals of U's columns modulo span(V), a linear map with kernel span(V).

    Uses U - V (V^T V)^{-1} V^T U when V^T V is invertible and falls back to
    elimination against V otherwise (possible over finite fields).
    """
    if V.shape[1] == 0 or U.shape[1] == 0:
        return U % q
    Vt = V.T.copy()
    G = matmul_mod(Vt, V, q)
    Ginv = inv_matrix_mod(G, q)
    if Ginv is not None:
        X = matmul_mod(Ginv, matmul_mod(Vt, U, q), q)
        return (U - matmul_mod(V, X, q)) % q
    n = V.shape[0]
    el = Eliminator(q, n)
    for j in range(V.shape[1]):
        el.insert(j, [int(x) for x in V[:, j]])
    cols = [el.reduce([int(x) for x in U[:, j]])[0] for j in range(U.shape[1])]
    return np.array(cols, dtype=_dtype(q)).T.reshape(U.shape)


def _basis_simple(U: np.ndarray, q: int) -> list[int]:
    # recursive halving: basis of the left half, then of the right half's residuals
    width = U.shape[1]
    if width == 0:
        return []
    if width == 1:
        return [0] if np.any(U % q) else []
    half = width // 2
    left = _basis_simple(U[:, :half], q)
    R = project_out(U[:, half:], U[:, left], q)
    right = _basis_simple(R, q)
    return left + [half + j for j in right]


def max_independent(F, strategy: str = "naive", block: int | None = None) -> list[int]:
    """Indices of the lowest-index maximal independent subset."""
    F = as_family(F)
    q, n = F.q, F.n
    M = to_matrix(F.rows, q, n)
    if strategy == "naive":
        return _rref_pivot_columns(M, q)
    if strategy != "blocked":
        raise ValueError(f"unknown strategy {strategy!r}")
    block = block or max(n, 1)
    chosen: list[int] = []
    for start in range(0, F.m, block):
        batch = M[:, start:start + block]
        R = project_out(batch, M[:, chosen], q)
        chosen += [start + j for j in _basis_simple(R, q)]
    return chosen
