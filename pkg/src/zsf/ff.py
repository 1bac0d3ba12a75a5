"""Prime-field arithmetic with canonical storage in [0, q) and a balanced lift."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import NonInvertible, NotPrime

# Deterministic Miller-Rabin witnesses: correct for every n < 3.3e24 > 2^64.
_DET_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_RANDOM_ROUNDS = 40
_WITNESS_SEED = 0x5A5F


def _mr_round(n: int, a: int, d: int, s: int) -> bool:
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int) -> bool:
    """Miller-Rabin; deterministic below 2^64, 40 seeded random rounds above.

    The error probability above 2^64 is at most 4^-40 = 2^-80.
    """
    if n < 2:
        return False
    for p in _DET_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if n < 1 << 64:
        bases = _DET_BASES
    else:
        rng = random.Random(_WITNESS_SEED)
        bases = tuple(rng.randrange(2, n - 1) for _ in range(_RANDOM_ROUNDS))
    return all(_mr_round(n, a, d, s) for a in bases)


@dataclass(frozen=True)
class Modulus:
    q: int

    def __post_init__(self):
        if not isinstance(self.q, int) or self.q < 3 or self.q % 2 == 0:
            raise NotPrime(f"modulus must be an odd prime, got {self.q!r}")
        if not is_prime(self.q):
            raise NotPrime(f"{self.q} is not prime")

    @property
    def half(self) -> int:
        return self.q // 2

    def lift(self, x: int) -> int:
        return balanced_lift(x, self.q)

    def inv(self, x: int) -> int:
        return inverse(x, self.q)


def check_prime(q: int | Modulus) -> bool:
    if isinstance(q, Modulus):
        q = q.q
    return is_prime(q)


def modq(q: int | Modulus) -> int:
    return q.q if isinstance(q, Modulus) else q


def balanced_lift(x: int, q: int) -> int:
    """Representative of x in [-(q//2), q//2]."""
    x %= q
    return x - q if x > q // 2 else x


def inverse(x: int, q: int) -> int:
    x %= q
    if x == 0:
        raise NonInvertible(f"0 has no inverse mod {q}")
    return pow(x, -1, q)
