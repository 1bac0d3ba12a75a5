"""Bounded zero-sums through reducible vectors and the halving trick.

A reducible vector u is a (+-1)-sum of a few source vectors such that c*u can be
rewritten as a sum with half the coefficient range, for every |c| <= h.
Squaring the number of input vectors therefore halves the coefficient bound.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .core import clean, lifted
from .errors import NotZeroSumBounded, PreconditionViolated, TooFewVectors, TrivialInput
from .ff import inverse
from .linalg import VecFamily, as_family, find_dependency, greedy_basis, is_zero, lin_comb, span_split
from .thresholds import (
    check_power2_k,
    is_power_of_two,
    sis_power2_threshold,
    sis_quarter_threshold,
    sis_weak_threshold,
    sparse_ratio,
)

Solver = Callable[[VecFamily], dict]


@dataclass
class Reducible:
    """Coefficient-only record of a (+-h -> +-h')-reducible vector.

    `alpha` is the (possibly rescaled) integer zero-sum the vector came from;
    `u_coeffs` holds the (+-1)-sum defining u over the same indices.
    """

    alpha: dict
    h: int
    h_prime: int
    u_coeffs: dict = field(default_factory=dict)

    @property
    def source_indices(self) -> list[int]:
        return sorted(self.alpha)

    def vector(self, F: VecFamily) -> tuple:
        return lin_comb(F.rows, self.u_coeffs, F.q, F.n)

    def expand(self, c: int) -> dict:
        """Integer coefficients in [-h', h'] over the sources summing to c*u."""
        if abs(c) > self.h:
            raise ValueError(f"|c|={abs(c)} exceeds h={self.h}")
        if c < 0:
            return {i: -x for i, x in self.expand(-c).items()}
        hp = self.h_prime
        if c <= hp:
            return {i: c * s for i, s in self.u_coeffs.items()} if c else {}
        out = {}
        for i, a in self.alpha.items():
            if a > hp:
                x = c - a
            elif a < -hp:
                x = -(c + a)
            else:
                x = -a
            if x:
                out[i] = x
        return out


def reducible_from_zero_sum(alpha: dict, h: int) -> Reducible:
    """Halving construction; alpha holds integer (balanced) coefficients."""
    if h < 2:
        raise PreconditionViolated(f"h={h} must be at least 2")
    alpha = {i: int(a) for i, a in alpha.items() if a}
    if not alpha:
        raise TrivialInput("zero coefficient map")
    a = max(abs(x) for x in alpha.values())
    if a > h:
        raise NotZeroSumBounded(f"coefficient {a} exceeds h={h}")
    hp = h // 2
    if a <= hp:
        t = h // a
        alpha = {i: t * x for i, x in alpha.items()}
    u = {i: (1 if x > hp else -1) for i, x in alpha.items() if abs(x) > hp}
    return Reducible(alpha, h, hp, u)


def iterate_halving(F, inner: Solver, h: int, m: int) -> dict:
    """(+-h//2)-zero-sum from m*m vectors, given an m-vector (+-h) solver."""
    F = as_family(F)
    q = F.q
    if F.m < m * m:
        raise TooFewVectors(m * m, F.m)
    reds, us = [], []
    for j in range(m):
        base = j * m
        local = inner(F.sub(range(base, base + m)))
        alpha = {base + i: c for i, c in lifted(local, q).items()}
        red = reducible_from_zero_sum(alpha, h)
        u = red.vector(F)
        if is_zero(u):
            return clean(red.u_coeffs, q)
        reds.append(red)
        us.append(u)
    gamma = lifted(inner(VecFamily.trusted(q, us, F.n)), q)
    out: dict = {}
    for j, c in gamma.items():
        if abs(c) > h:
            raise NotZeroSumBounded(f"inner solver returned coefficient {c} > {h}")
        out.update(reds[j].expand(c))
    return clean(out, q)


def choose_sparse_combination(columns: list[dict], q: int) -> list[int]:
    """Nonzero beta in F_q^r making sum beta_j columns[j] sparse.

    Conditional expectations over a uniformly random nonzero beta, fixing one
    entry at a time; the result has at most floor of the initial expectation
    nonzero coordinates.
    """
    r = len(columns)
    coords = sorted({t for col in columns for t, c in col.items() if c % q})
    last = {t: max(j for j in range(r) if columns[j].get(t, 0) % q) for t in coords}
    partial = {t: 0 for t in coords}
    beta: list[int] = []
    prefix_nonzero = False

    def expectation(vals, nonzero, step):
        s = r - step - 1
        total = Fraction(0)
        for t in coords:
            if last[t] <= step:
                total += 1 if vals[t] % q else 0
            elif nonzero:
                total += Fraction(q - 1, q)
            else:
                total += 1 - Fraction(q ** (s - 1) - 1, q ** s - 1)
        return total

    for step in range(r):
        col = columns[step]
        cands = {0}
        for t in coords:
            c = col.get(t, 0) % q
            if last[t] == step and c:
                cands.add((-partial[t]) * inverse(c, q) % q)
        x = 1
        while x in cands and x < q:
            x += 1
        if x < q:
            cands.add(x)
        best = None
        for x in sorted(cands):
            nonzero = prefix_nonzero or x != 0
            if not nonzero and step == r - 1:
                continue  # beta must not be all zero
            vals = {t: (partial[t] + x * col.get(t, 0)) % q for t in coords}
            e = expectation(vals, nonzero, step)
            if best is None or e < best[0]:
                best = (e, x, vals)
        _, x, partial = best
        beta.append(x)
        prefix_nonzero = prefix_nonzero or x != 0
    return beta


def _sparse_zero_sum(F: VecFamily, idx: list[int], r: int) -> dict:
    """Zero-sum over idx (len >= rank + r) with at most floor(rho*rank) + r entries."""
    q = F.q
    for i in idx:
        if is_zero(F.rows[i]):
            return {i: 1}
    sub = F.sub(idx)
    basis, el = greedy_basis(sub)
    bset = set(basis)
    extra = [j for j in range(len(idx)) if j not in bset][:r]
    if len(extra) < r:
        raise TooFewVectors(len(basis) + r, len(idx))
    columns = [el.coords(sub.rows[j]) for j in extra]
    beta = choose_sparse_combination(columns, q)
    comb: dict[int, int] = {}
    for b, col in zip(beta, columns):
        if b:
            for t, c in col.items():
                comb[t] = (comb.get(t, 0) + b * c) % q
    out = {idx[j]: b for b, j in zip(beta, extra) if b}
    for t, c in comb.items():
        if c:
            out[idx[t]] = (-c) % q
    bound = int(sparse_ratio(q, r) * len(basis)) + r
    assert len(out) <= bound, (len(out), bound)
    return out


def sparse_full_zero_sum(F, r: int = 1) -> dict:
    """Sparse nontrivial zero-sum with unrestricted coefficients."""
    F = as_family(F)
    if r < 1:
        raise PreconditionViolated("r must be at least 1")
    ell = len(greedy_basis(F)[0])
    if F.m < ell + r:
        raise TooFewVectors(ell + r, F.m)
    return _sparse_zero_sum(F, list(range(ell + r)), r)


def _quarter(q: int, pool: list[int], rows: dict, ell: int, r: int) -> dict:
    if ell == 0:
        return {pool[0]: 1}
    fam = VecFamily.trusted(q, [rows[i] for i in pool], ell)
    local = _sparse_zero_sum(fam, list(range(min(len(pool), ell + r))), r)
    alpha = {pool[j]: c for j, c in lifted(local, q).items()}
    if len(alpha) == 1:
        return clean(alpha, q)  # a zero vector
    red = reducible_from_zero_sum(alpha, q // 2)
    u = lin_comb(rows, red.u_coeffs, q, ell)
    if is_zero(u):
        return clean(red.u_coeffs, q)
    rest = [i for i in pool if i not in alpha]
    split = span_split(u, VecFamily.trusted(q, [rows[i] for i in rest], ell))
    inner = _quarter(q, rest, dict(zip(rest, split.reduced_family(q).rows)), ell - 1, r)
    pos = {i: j for j, i in enumerate(rest)}
    c = sum(x * split.components[pos[i]][0] for i, x in inner.items()) % q
    out = dict(inner)
    c = c - q if c > q // 2 else c
    out.update(red.expand(-c))
    return clean(out, q)


def sis_quarter(F, r: int = 1) -> dict:
    """Nontrivial (+-q//4)-zero-sum in the worst case."""
    F = as_family(F)
    q = F.q
    if q <= 3:
        raise PreconditionViolated("needs q > 3")
    need = sis_quarter_threshold(q, F.n, r)
    if F.m < need:
        raise TooFewVectors(need, F.m)
    for i, v in enumerate(F.rows):
        if is_zero(v):
            return {i: 1}
    pool = list(range(need))
    return _quarter(q, pool, {i: F.rows[i] for i in pool}, F.n, r)


def sis_power2(F, k: int, r: int = 1) -> dict:
    """Nontrivial (+-floor(q/2k))-zero-sum for k a power of two."""
    F = as_family(F)
    q = F.q
    if q < 5:
        raise PreconditionViolated("needs q >= 5")
    check_power2_k(q, k)
    need = sis_power2_threshold(q, F.n, k, r)
    if F.m < need:
        raise TooFewVectors(need, F.m)
    if k == 2:
        return sis_quarter(F, r)
    m = sis_power2_threshold(q, F.n, k // 2, r)
    return iterate_halving(F, lambda G: sis_power2(G, k // 2, r), q // k, m)


def sis_weak(F, k: int) -> dict:
    """(+-floor(q/2k))-zero-sum from (n+1)^k vectors via plain dependencies."""
    F = as_family(F)
    q = F.q
    if not is_power_of_two(k) or k > q // 2:
        raise PreconditionViolated(f"bad k={k}")
    need = sis_weak_threshold(F.n, k)
    if F.m < need:
        raise TooFewVectors(need, F.m)
    if k == 1:
        return find_dependency(F.sub(range(F.n + 1)))
    m = sis_weak_threshold(F.n, k // 2)
    return iterate_halving(F, lambda G: sis_weak(G, k // 2), q // k, m)
