"""Exact vector-count thresholds shared by the solvers, the tests and the CLI.

All arithmetic is over integers and Fractions; ceilings are applied only where
a count of vectors is allocated.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .errors import BadK


def ceil_log(base: int, x) -> int:
    """Smallest t >= 0 with base**t >= x."""
    x = Fraction(x)
    t, p = 0, 1
    while p < x:
        p *= base
        t += 1
    return t


def ceil_frac(x) -> int:
    return math.ceil(Fraction(x))


def is_power_of_two(k: int) -> bool:
    return k >= 1 and k & (k - 1) == 0


# ---- F_3 ----

@lru_cache(maxsize=None)
def f3_main_level(ell: int) -> Fraction:
    """The rational m_ell of the main F_3 recursion."""
    if ell == 0:
        return Fraction(1)
    prev = f3_main_level(ell - 1)
    return max(Fraction(ell), prev + Fraction(2 * (ell + 1), 3)) + ceil_log(3, ell + 1)


def f3_closed_form(ell: int) -> Fraction:
    return Fraction((ell + 1) * (ell + 2) + 1, 3) + ell * ceil_log(3, ell + 1)


def f3_threshold(n: int, strategy: str = "main") -> int:
    if n < 0:
        raise ValueError("n must be non-negative")
    if strategy == "weak":
        return (n + 1) ** 2
    if strategy == "quadratic":
        return (n + 1) * (n + 2) // 2
    if strategy == "main":
        return ceil_frac(f3_main_level(n))
    raise ValueError(f"unknown strategy {strategy!r}")


# ---- SIS, power-of-two k ----

def sparse_ratio(q: int, r: int) -> Fraction:
    """(1 - 1/q) / (1 - 1/q^r)."""
    return Fraction(q ** r - q ** (r - 1), q ** r - 1)


def sparse_support_bound(q: int, ell: int, r: int) -> int:
    return math.floor(sparse_ratio(q, r) * ell) + r


def sis_quarter_level(q: int, ell: int, r: int = 1) -> Fraction:
    return sparse_ratio(q, r) * Fraction(ell * (ell + 1), 2) + r * (ell + 1)


def sis_quarter_threshold(q: int, n: int, r: int = 1) -> int:
    return ceil_frac(sis_quarter_level(q, n, r))


def check_power2_k(q: int, k: int) -> None:
    if not is_power_of_two(k) or k < 2:
        raise BadK(f"k={k} is not a power of two >= 2")
    if k > q // 2:
        raise BadK(f"k={k} exceeds q//2={q // 2}")


def sis_power2_threshold(q: int, n: int, k: int, r: int = 1) -> int:
    check_power2_k(q, k)
    # each halving step needs M batches of M vectors, M the inner threshold
    return sis_quarter_threshold(q, n, r) ** (k // 2)


def sis_weak_threshold(n: int, k: int) -> int:
    return (n + 1) ** k


# ---- trees / one-shot / centered ----

def tree_levels(n: int, K: int, m_of, s_of) -> list[int]:
    """[m_1, ..., m_{K+1}] for a forest of depth K+1."""
    ms = [1]
    for ell in range(2, K + 2):
        dim = K ** (K - ell + 1) * n
        ms.append((ms[-1] - 1) * s_of(dim) + m_of(dim))
    return ms


def tree_sparsity(n: int, K: int, s_of) -> int:
    out = 1
    for ell in range(1, K + 1):
        out *= s_of(K ** (K - ell) * n)
    return out


def lift_threshold(n: int, K: int, m_of, s_of) -> int:
    return m_of(n) * tree_levels(n, K, m_of, s_of)[-1]


def one_shot_exact(n: int, k: int) -> int:
    K = k - 1
    f = lambda d: d + k
    return lift_threshold(n, K, f, f)


def one_shot_bound(n: int, k: int) -> int:
    return (k - 1) ** ((k - 1) * (k - 2) // 2) * (n + k) ** k


def centered_exact(n: int, k: int) -> int:
    f = lambda d: d + k + 1
    return lift_threshold(n, k, f, f)


def centered_bound(n: int, k: int) -> int:
    return k ** (k * (k - 1) // 2) * (n + k + 1) ** (k + 1)


# ---- average case ----

def batch_count(q: int, eps) -> int:
    """d with 2^d >= q/eps, the number of batches in the affine transfer."""
    return ceil_log(2, Fraction(q) / Fraction(eps))


def affine_threshold(inner: int, d: int) -> int:
    return d * inner + 1


def subset_power2_k(q: int) -> int:
    """The power of two k with q/4 < k <= q//2."""
    k = 1
    while 4 * k <= q:
        k *= 2
    if k > q // 2:
        raise BadK(f"no power of two in ({q}/4, {q // 2}]")
    return k


def improved_k(q: int) -> int:
    return (q + 3) // 4


def subset_inner_batches(q: int) -> int:
    # per-batch failure probability <= 1/100
    return ceil_log(2, 100 * q)


def group_count(mbar: int, eps) -> int:
    L = math.log(1 / float(Fraction(eps)))
    return math.ceil(mbar * (1 + L / mbar + math.sqrt(3 * L / mbar)) - 1e-12)


def engine_threshold(q: int, n: int, engine: str, r: int = 1) -> int:
    """Input size of the (+-1) engine used by the subset-sum pipelines."""
    if engine == "power2":
        return sis_power2_threshold(q, n, subset_power2_k(q), r)
    if engine == "one_shot":
        return one_shot_exact(n, improved_k(q))
    raise ValueError(f"unknown engine {engine!r}")


def cheapest_engine(q: int, n: int, r: int = 1) -> str:
    return min(("power2", "one_shot"), key=lambda e: (engine_threshold(q, n, e, r), e))


def subset_sum_threshold(q: int, n: int, eps, engine: str = "power2", r: int = 1) -> int:
    mbar = engine_threshold(q, n, engine, r)
    d = subset_inner_batches(q)
    return group_count(mbar, eps) * (d * mbar + 1)


def size_two_params(q: int, eps) -> tuple[int, Fraction]:
    d = ceil_log(2, 2 * Fraction(q) / Fraction(eps))
    return d, Fraction(eps) / (2 * d)


def size_two_threshold(q: int, n: int, eps, engine: str = "power2", r: int = 1) -> int:
    d, inner_eps = size_two_params(q, eps)
    return affine_threshold(subset_sum_threshold(q, n, inner_eps, engine, r), d)


def thresholds(q: int, n: int, k: int | None = None, r: int = 1, eps=Fraction(1, 2)) -> dict:
    """Every threshold that applies to (q, n, k, r), keyed by solver name."""
    out: dict = {}
    if q == 3:
        for s in ("weak", "quadratic", "main"):
            out[f"f3_{s}"] = f3_threshold(n, s)
        return out
    out["sis_quarter"] = sis_quarter_threshold(q, n, r)
    if k is not None:
        if is_power_of_two(k) and 2 <= k <= q // 2:
            out["sis_power2"] = sis_power2_threshold(q, n, k, r)
            out["sis_weak"] = sis_weak_threshold(n, k)
        if 2 <= k <= q // 2:
            out["sis_one_shot"] = one_shot_exact(n, k)
            out["sis_one_shot_bound"] = one_shot_bound(n, k)
        if 1 <= k < q // 2:
            out["cis_centered"] = centered_exact(n, k)
            out["cis_centered_bound"] = centered_bound(n, k)
    for engine in ("power2", "one_shot"):
        out[f"subset_sum_{engine}"] = subset_sum_threshold(q, n, eps, engine, r)
    return out
