"""Average-case subset-sum and CIS via shifted (+-1)-zero-sums."""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Sequence

from .core import clean
from .errors import FailureError, NoLongAP, PreconditionViolated, SampleFailure, SolveFailed, TooFewGroups, TooFewVectors
from .ff import inverse
from .halving import sis_power2
from .linalg import VecFamily, as_family, find_dependency, is_zero
from .thresholds import (
    affine_threshold,
    batch_count,
    engine_threshold,
    group_count,
    sis_power2_threshold,
    subset_inner_batches,
    subset_power2_k,
    improved_k,
)

Solver = Callable[[VecFamily], dict]

DP_LIMIT = 1 << 22


def subset_with_sum(betas: Sequence[int | None], q: int, target: int = 1) -> list[int] | None:
    """Indices j (skipping None entries) whose betas sum to target mod q."""
    target %= q
    reach: dict[int, tuple | None] = {0: None}
    for j, b in enumerate(betas):
        if b is None:
            continue
        new = dict(reach)
        for s in reach:
            t = (s + b) % q
            if t not in new:
                new[t] = (s, j)
        reach = new
        if target in reach and target != 0:
            break
        if len(reach) > DP_LIMIT:
            raise PreconditionViolated("subset-sum table exceeds the size limit")
    if target not in reach or (target == 0):
        return None
    out = []
    s = target
    while reach[s] is not None:
        s, j = reach[s]
        out.append(j)
    return sorted(out)


def affine_transfer(F, inner: Solver, m: int, a: int, b: int, d: int) -> dict:
    """B-zero-sum for B = aA + b from an A-zero-sum solver on m vectors.

    The solver must leave unused vectors at coefficient 0, so 0 must lie in A.
    Every input vector receives a coefficient, hence the output has full
    support whenever b != 0.
    """
    F = as_family(F)
    q = F.q
    a, b = a % q, b % q
    if a == 0:
        raise PreconditionViolated("a must be nonzero")
    if b == 0:
        if F.m < m:
            raise TooFewVectors(m, F.m)
        return clean({i: a * x for i, x in inner(F.sub(range(m))).items()}, q)
    need = affine_threshold(m, d)
    if F.m < need:
        raise TooFewVectors(need, F.m)
    bp = b * inverse(a, q) % q
    total = [0] * F.n
    for v in F.rows:
        for t, x in enumerate(v):
            total[t] += x
    vstar = tuple(-bp * x % q for x in total)
    if is_zero(vstar):
        return {i: b for i in range(F.m)}
    p = next(t for t, x in enumerate(vstar) if x)
    inv = inverse(vstar[p], q)
    cs, ws = [], []
    for v in F.rows[: d * m]:
        c = v[p] * inv % q
        cs.append(c)
        ws.append(tuple((x - c * y) % q for x, y in zip(v, vstar)))
    alphas: list[dict | None] = []
    betas: list[int | None] = []
    for j in range(d):
        base = j * m
        try:
            local = inner(VecFamily.trusted(q, ws[base:base + m], F.n))
        except FailureError:
            alphas.append(None)
            betas.append(None)
            continue
        alpha = {base + i: x % q for i, x in local.items() if x % q}
        alphas.append(alpha)
        betas.append(sum(x * cs[i] for i, x in alpha.items()) % q)
    T = subset_with_sum(betas, q, 1)
    if T is None:
        raise SampleFailure("no batch subset reaches the target")
    coef = {i: bp for i in range(F.m)}
    for j in T:
        for i, x in alphas[j].items():
            coef[i] = (coef[i] + x) % q
    return clean({i: a * x for i, x in coef.items()}, q)


def solve_012(F, pm1: Solver, d: int, m: int) -> dict:
    """(0,1,2)-zero-sum from d*m+1 vectors and an m-vector (+-1) solver."""
    F = as_family(F)
    need = d * m + 1
    if F.m < need:
        raise TooFewVectors(need, F.m)
    return affine_transfer(F.sub(range(need)), pm1, m, 1, 1, d)


def combine_012_to_01(F, groups: list[tuple[Sequence[int], dict]], pm1: Solver, m: int) -> dict:
    """Subset-zero-sum from disjoint zero-sums with coefficients in {1, 2}."""
    F = as_family(F)
    q = F.q
    seen: set[int] = set()
    for S, alpha in groups:
        S = set(S)
        assert S and not (S & seen), "groups must be nonempty and disjoint"
        assert set(alpha) == S and all(alpha[i] in (1, 2) for i in S)
        seen |= S
    for S, alpha in groups:
        vals = set(alpha.values())
        if len(vals) == 1:
            return {i: 1 for i in sorted(S)}
    if len(groups) < m:
        raise TooFewGroups(m, len(groups))
    groups = groups[:m]
    u2 = []
    for S, alpha in groups:
        u2.append(F.combine({i: 1 for i in S if alpha[i] == 2}))
    gamma = pm1(VecFamily.trusted(q, u2, F.n))
    out = {}
    for j, g in gamma.items():
        S, alpha = groups[j]
        if g % q == 1:
            out.update({i: 1 for i in S if alpha[i] == 2})
        elif g % q == q - 1:
            out.update({i: 1 for i in S})
        else:
            raise PreconditionViolated("engine returned a coefficient outside +-1")
    return dict(sorted(out.items()))


def pm1_engine(q: int, n: int, engine: str = "power2", r: int = 1) -> tuple[Solver, int]:
    """A worst-case (+-1) solver and its input size."""
    m = engine_threshold(q, n, engine, r)
    if engine == "power2":
        k = subset_power2_k(q)
        return (lambda G: sis_power2(G, k, r)), m
    from .general import sis_one_shot

    k = improved_k(q)
    return (lambda G: sis_one_shot(G, k)), m


def subset_sum_random(F, eps=Fraction(1, 2), engine: str = "power2", r: int = 1) -> dict:
    """Nonempty zero-sum subset of uniform random vectors, w.p. >= 1 - eps."""
    F = as_family(F)
    q = F.q
    if q < 5:
        raise PreconditionViolated("needs q >= 5")
    pm1, mbar = pm1_engine(q, F.n, engine, r)
    d = subset_inner_batches(q)
    size = d * mbar + 1
    need = group_count(mbar, eps) * size
    if F.m < need:
        raise TooFewVectors(need, F.m)
    for i, v in enumerate(F.rows):
        if is_zero(v):
            return {i: 1}
    groups = []
    for g in range(F.m // size):
        idx = list(range(g * size, (g + 1) * size))
        try:
            x = solve_012(F.sub(idx), pm1, d, mbar)
        except SampleFailure:
            continue
        groups.append(([idx[i] for i in x], {idx[i]: c for i, c in x.items()}))
        if len(groups) == mbar or len(set(x.values())) == 1:
            break
    if len(groups) < mbar and not any(len(set(al.values())) == 1 for _, al in groups):
        raise SolveFailed(f"only {len(groups)} of {mbar} groups found")
    return combine_012_to_01(F, groups, pm1, mbar)


def ap_interval_form(x: int, y: int, s: int, q: int) -> tuple[int, int]:
    """(a, b) with {x + j*y : 0 <= j <= 2s} = a*{-s..s} + b."""
    return y % q, (x + s * y) % q


def cis_simple(F, A, r: int = 1, eps=Fraction(1, 2), ap=None, k: int | None = None) -> dict:
    """A-zero-sum for a dense set A through a long AP and the halving solvers."""
    from .arith import find_ap, lev_long_ap, lev_applies

    F = as_family(F)
    q = F.q
    A = frozenset(a % q for a in A)
    if len(A) == q:
        return find_dependency(F)
    if q < 5:
        raise PreconditionViolated("needs q >= 5")
    if ap is None:
        if k is not None:
            ap = find_ap(A, q, 1 + 2 * (q // (2 * k)))
            if ap is None:
                raise NoLongAP(f"no AP of length {1 + 2 * (q // (2 * k))} in A")
        elif lev_applies(A, q):
            ap = lev_long_ap(A, q)
        else:
            raise NoLongAP("A is too sparse for lev_long_ap and no AP was supplied")
    if k is None:
        k = 2
        while q // (2 * k) * 2 + 1 > ap.length:
            k *= 2
    s = q // (2 * k)
    if 2 * s + 1 > ap.length or k > q // 2:
        raise NoLongAP(f"AP of length {ap.length} too short for k={k}")
    a, b = ap_interval_form(ap.start, ap.step, s, q)
    assert all((a * j + b) % q in A for j in range(-s, s + 1))
    mbar = sis_power2_threshold(q, F.n, k, r)
    d = batch_count(q, eps)
    return affine_transfer(F, lambda G: sis_power2(G, k, r), mbar, a, b, d)
