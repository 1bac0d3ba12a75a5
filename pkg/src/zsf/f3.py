"""Subset-sum over F_3^n: weak, quadratic and main (about n^2/3) strategies."""

from __future__ import annotations

import itertools

from .errors import PreconditionViolated, TooFewVectors
from .linalg import VecFamily, as_family, find_dependency, greedy_basis, is_zero, lin_comb, span_split
from .thresholds import ceil_log, f3_threshold

STRATEGIES = ("weak", "quadratic", "main")


def _require_f3(F: VecFamily):
    if F.q != 3:
        raise PreconditionViolated(f"F_3 solver called with q={F.q}")


def _zero_index(F: VecFamily, idx) -> int | None:
    for i in idx:
        if is_zero(F.rows[i]):
            return i
    return None


def _sparse_dependence(F: VecFamily, idx: list[int], ell: int) -> dict:
    """(+-1)-zero-sum over idx with at most floor(2(ell+1)/3) + t entries.

    idx lists ell + t vectors that lie in a space of dimension ell.
    """
    z = _zero_index(F, idx)
    if z is not None:
        return {z: 1}
    t = ceil_log(3, ell + 1)
    sub = F.sub(idx)
    basis, el = greedy_basis(sub)
    extra = [j for j in range(len(idx)) if j not in set(basis)][:t]
    if len(extra) < t:
        # rank is below ell; any dependency among the first rank+1 is sparse enough
        dep = find_dependency(sub)
        return {idx[j]: c for j, c in dep.items()}
    coords = [el.coords(sub.rows[j]) for j in extra]
    bound = 2 * (ell + 1) // 3
    for alpha in itertools.product((0, 1, 2), repeat=t):
        if not any(alpha):
            continue
        comb: dict[int, int] = {}
        for a, cj in zip(alpha, coords):
            if a:
                for b, c in cj.items():
                    comb[b] = (comb.get(b, 0) + a * c) % 3
        nz = {b: c for b, c in comb.items() if c}
        if len(nz) <= bound:
            out = {idx[j]: a for a, j in zip(alpha, extra) if a}
            for b, c in nz.items():
                out[idx[b]] = (-c) % 3
            return out
    raise AssertionError("averaging argument violated")  # unreachable


def f3_sparse_dependence(F) -> dict:
    F = as_family(F)
    _require_f3(F)
    ell = len(greedy_basis(F)[0])
    t = ceil_log(3, ell + 1)
    if F.m < ell + t:
        raise TooFewVectors(ell + t, F.m)
    return _sparse_dependence(F, list(range(ell + t)), ell)


def _split_pm(alpha: dict) -> tuple[list[int], list[int]]:
    plus = [i for i, c in alpha.items() if c % 3 == 1]
    minus = [i for i, c in alpha.items() if c % 3 == 2]
    return plus, minus


def _subset(idx) -> dict:
    return {i: 1 for i in idx}


def _weak(F: VecFamily) -> dict:
    n = F.n
    batches = [list(range(j * (n + 1), (j + 1) * (n + 1))) for j in range(n + 1)]
    us, parts = [], []
    for b in batches:
        dep = find_dependency(F.sub(b))
        plus, minus = _split_pm({b[i]: c for i, c in dep.items()})
        u = lin_comb(F.rows, _subset(plus), 3, n)
        if is_zero(u):
            # sum over plus is zero, hence so is the sum over minus
            return _subset(plus or minus)
        us.append(u)
        parts.append((plus, plus + minus))
    gamma = find_dependency(VecFamily.trusted(3, us, n))
    out: dict = {}
    for j, g in gamma.items():
        # u_j is the plus-subset sum; -u_j = u_j + u_j' is the whole support
        out.update(_subset(parts[j][0] if g == 1 else parts[j][1]))
    return out


def _recurse(F: VecFamily, pool: list[int], rows: dict, ell: int, sparse: bool) -> dict:
    """Subset-zero-sum of rows[i] (vectors of dimension ell) over the pool."""
    if ell == 0:
        return {pool[0]: 1}
    fam = VecFamily.trusted(3, [rows[i] for i in pool], ell)
    z = next((j for j, v in enumerate(fam.rows) if is_zero(v)), None)
    if z is not None:
        return {pool[z]: 1}
    if sparse:
        t = ceil_log(3, ell + 1)
        head = list(range(min(len(pool), max(ell, 1) + t)))
        local = _sparse_dependence(fam, head, ell)
    else:
        local = find_dependency(fam.sub(range(min(len(pool), ell + 1))))
    alpha = {pool[j]: c for j, c in local.items()}
    plus, minus = _split_pm(alpha)
    u = lin_comb(rows, _subset(plus), 3, ell)
    if is_zero(u):
        return _subset(plus or minus)
    support = set(alpha)
    rest = [i for i in pool if i not in support]
    split = span_split(u, VecFamily.trusted(3, [rows[i] for i in rest], ell))
    red = split.reduced_family(3)
    sub_rows = dict(zip(rest, red.rows))
    inner = _recurse(F, rest, sub_rows, ell - 1, sparse)
    pos = {i: j for j, i in enumerate(rest)}
    c = sum(split.components[pos[i]][0] for i in inner) % 3
    # the inner subset sums to c*u; add a subset of the support summing to -c*u
    out = dict(inner)
    if c == 2:
        out.update(_subset(plus))
    elif c == 1:
        out.update(_subset(plus + minus))
    return out


def f3_solve(F, strategy: str = "main") -> dict:
    """Nonempty subset of F summing to zero; needs f3_threshold(n, strategy) vectors."""
    F = as_family(F)
    _require_f3(F)
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    need = f3_threshold(F.n, strategy)
    if F.m < need:
        raise TooFewVectors(need, F.m)
    z = _zero_index(F, range(F.m))
    if z is not None:
        return {z: 1}
    if strategy == "weak":
        return _weak(F)
    pool = list(range(need))
    rows = {i: F.rows[i] for i in pool}
    return _recurse(F, pool, rows, F.n, strategy == "main")
