"""Arithmetic progressions and holes in dense subsets of F_q, found constructively."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import NoY, PreconditionViolated
from .ff import inverse


@dataclass(frozen=True)
class APWitness:
    start: int
    step: int
    length: int

    def terms(self, q: int) -> list[int]:
        return [(self.start + j * self.step) % q for j in range(self.length)]

    def inside(self, A: Iterable[int], q: int) -> bool:
        S = {a % q for a in A}
        return self.step % q != 0 and all(t in S for t in self.terms(q))


def _canon(A, q) -> frozenset:
    return frozenset(a % q for a in A)


def lev_applies(A, q: int) -> bool:
    """|A| >= q - log_4(q+2), checked as 4^c <= q + 2."""
    c = q - len(_canon(A, q))
    return 4 ** c <= q + 2


def _intervals(q: int) -> list[range]:
    # F_q \ {0} split into four contiguous runs starting at 1
    base, extra = divmod(q - 1, 4)
    out, lo = [], 1
    for b in range(4):
        ln = base + (1 if b < extra else 0)
        out.append(range(lo, lo + ln))
        lo += ln
    return out


def lev_long_ap(A, q: int) -> APWitness:
    """AP of length >= (q+1)/2 inside a set missing at most log_4(q+2) elements."""
    A = _canon(A, q)
    if q < 5 or q % 2 == 0:
        raise PreconditionViolated("needs an odd prime q >= 5")
    if not lev_applies(A, q):
        raise PreconditionViolated(f"|A|={len(A)} below q - log_4(q+2)")
    tau = min(A)
    holes = sorted((x - tau) % q for x in set(range(q)) - A)
    ivs = _intervals(q)
    where = {}
    for b, iv in enumerate(ivs):
        for x in iv:
            where[x] = b
    seen: dict[tuple, int] = {}
    w = len(ivs[0]) - 1
    for s in range(1, q):
        pat = tuple(where[s * h % q] for h in holes)
        if len(set(pat)) <= 1:
            b = pat[0] if pat else 0
            iv = ivs[b]
            # s*(A - tau) contains the cyclic complement of I_b
            first, length = (iv.stop) % q, q - len(iv)
            y = inverse(s, q)
            return APWitness((first * y + tau) % q, y, length)
        if pat in seen:
            sb = (s - seen[pat]) % q
            # sb*(holes - tau) lies in [-w, w], so sb*(A - tau) covers the rest
            y = inverse(sb, q)
            return APWitness(((w + 1) * y + tau) % q, y, q - 2 * w - 1)
        seen[pat] = s
    raise AssertionError("pigeonhole violated")  # unreachable


def antipodal_hole(A, q: int, require_y: bool = False) -> tuple[int, int, int | None]:
    """(x, z, y): z in A, z +- x not in A; y (if any) with z +- y in A, y not in {0, +-x}."""
    A = _canon(A, q)
    holes = sorted(set(range(q)) - A)
    c = len(holes)
    if not 2 <= c < q:
        raise PreconditionViolated(f"hole count {c} outside [2, q)")
    half = inverse(2, q)
    found = None
    for i, u in enumerate(holes):
        for v in holes[i + 1:]:
            z = (u + v) * half % q
            if z in A:
                found = ((z - u) % q, z)
                break
        if found:
            break
    if found is None:
        raise AssertionError("midpoint argument violated")  # unreachable
    x, z = found
    y = None
    if 2 * c < q + 1:
        for cand in range(1, q):
            if cand in (x, q - x):
                continue
            if (z + cand) % q in A and (z - cand) % q in A:
                y = cand
                break
    if y is None and require_y:
        raise NoY(f"no y for c={c}, q={q}")
    return x, z, y


def window_3ap(bits: dict[int, int]) -> tuple[int, int, int]:
    """j < k < l in [-4, 4] with j + l = 2k and bits[j] = bits[k] = bits[l] = 0."""
    if bits.get(0, 0) != 0 or any(bits[i] + bits[-i] != 1 for i in range(1, 5)):
        raise PreconditionViolated("window bits must satisfy c_0 = 0 and c_i + c_-i = 1")
    for j in range(-4, 5):
        for k in range(j + 1, 5):
            l = 2 * k - j
            if l <= 4 and bits[j] == bits[k] == bits[l] == 0:
                return j, k, l
    raise AssertionError("no 3-AP in the window")  # unreachable


def middle_3ap(A, q: int) -> APWitness:
    """3-AP inside a set whose complement has exactly (q+1)/2 elements, q >= 11."""
    A = _canon(A, q)
    if q < 11:
        raise PreconditionViolated("needs q >= 11")
    if q - len(A) != (q + 1) // 2:
        raise PreconditionViolated("complement must have (q+1)/2 elements")
    x, z, _ = antipodal_hole(A, q)
    m = q // 2
    t = m * inverse(x, q) % q
    tinv = inverse(t, q)
    Ap = {t * (a - z) % q for a in A}
    for y in range(1, m):
        if y in Ap and q - y in Ap:
            return APWitness((z - y * tinv) % q, y * tinv % q, 3)
    # no pair {y, -y} fits in A', so A' holds exactly one of each +-i
    bits = {i: (0 if i % q in Ap else 1) for i in range(-4, 5)}
    j, k, _ = window_3ap(bits)
    return APWitness((z + j * tinv) % q, (k - j) * tinv % q, 3)


def find_ap(A, q: int, length: int) -> APWitness | None:
    """Lexicographically smallest (step, start) AP of the given length inside A."""
    A = _canon(A, q)
    if length <= 1:
        return APWitness(min(A), 1, length) if A else None
    for y in range(1, q // 2 + 1):
        for x in range(q):
            if all((x + j * y) % q in A for j in range(length)):
                return APWitness(x, y, length)
    return None
