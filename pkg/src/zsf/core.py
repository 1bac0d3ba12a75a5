"""Constraint sets, problem statements and the exact verifier."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence, Union

from .errors import DimensionMismatch, PreconditionViolated
from .ff import balanced_lift
from .linalg import VecFamily, lin_comb

CoeffMap = dict  # index -> canonical residue, zeros omitted


class Constraint:
    """Allowed coefficient set; subclasses define membership for a given q."""

    def contains(self, x: int, q: int) -> bool:
        raise NotImplementedError

    def members(self, q: int) -> list[int]:
        return [x for x in range(q) if self.contains(x, q)]

    def validate(self, q: int) -> None:
        pass

    def describe(self) -> str:
        raise NotImplementedError


@dataclass(frozen=True)
class Interval(Constraint):
    s: int

    def contains(self, x, q):
        return abs(balanced_lift(x, q)) <= self.s

    def validate(self, q):
        if not 1 <= self.s <= q // 2:
            raise PreconditionViolated(f"interval bound {self.s} outside [1, {q // 2}]")

    def describe(self):
        return f"interval:{self.s}"


@dataclass(frozen=True)
class Explicit(Constraint):
    A: frozenset

    def __init__(self, A):
        object.__setattr__(self, "A", frozenset(int(a) for a in A))

    def contains(self, x, q):
        return x % q in self._canon(q)

    def _canon(self, q):
        return {a % q for a in self.A}

    def validate(self, q):
        # the full field is accepted too: it is the unconstrained zero-sum problem
        if not 2 <= len(self._canon(q)) <= q:
            raise PreconditionViolated(f"explicit set of size {len(self._canon(q))} not allowed")

    def describe(self):
        return "explicit:" + ",".join(str(a) for a in sorted(self.A))


@dataclass(frozen=True)
class Forbidden(Constraint):
    Abar: frozenset

    def __init__(self, Abar):
        object.__setattr__(self, "Abar", frozenset(int(a) for a in Abar))

    def contains(self, x, q):
        return x % q not in {a % q for a in self.Abar}

    def validate(self, q):
        c = len({a % q for a in self.Abar})
        if not 1 <= c <= q - 2:
            raise PreconditionViolated(f"forbidden set of size {c} not allowed")

    def describe(self):
        return "forbidden:" + ",".join(str(a) for a in sorted(self.Abar))


@dataclass(frozen=True)
class Binary(Constraint):
    def contains(self, x, q):
        return x % q in (0, 1)

    def describe(self):
        return "binary"


@dataclass(frozen=True)
class Ternary012(Constraint):
    def contains(self, x, q):
        return x % q in (0, 1, 2)

    def describe(self):
        return "ternary012"


def parse_constraint(text: str) -> Constraint:
    kind, _, arg = text.partition(":")
    kind = kind.strip().lower()
    if kind == "interval":
        return Interval(int(arg))
    if kind == "explicit":
        return Explicit(int(a) for a in arg.split(",") if a.strip())
    if kind == "forbidden":
        return Forbidden(int(a) for a in arg.split(",") if a.strip())
    if kind == "binary":
        return Binary()
    if kind == "ternary012":
        return Ternary012()
    raise ValueError(f"unknown constraint {text!r}")


ConstraintSpec = Union[Constraint, Sequence[Constraint]]


@dataclass
class Problem:
    family: VecFamily
    constraint: ConstraintSpec
    target: tuple | None = None

    def __post_init__(self):
        q, n = self.family.q, self.family.n
        if self.target is None:
            self.target = (0,) * n
        self.target = tuple(int(t) % q for t in self.target)
        if len(self.target) != n:
            raise DimensionMismatch(f"target has dimension {len(self.target)}, family {n}")
        if not isinstance(self.constraint, Constraint):
            self.constraint = tuple(self.constraint)
            if len(self.constraint) != self.family.m:
                raise DimensionMismatch("per-index constraint list must have one entry per vector")
            for c in self.constraint:
                c.validate(q)
        else:
            self.constraint.validate(q)

    def constraint_at(self, i: int) -> Constraint:
        if isinstance(self.constraint, Constraint):
            return self.constraint
        return self.constraint[i]


@dataclass
class VerifyReport:
    sums_to_target: bool
    in_constraint: bool
    nontrivial: bool
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.sums_to_target and self.in_constraint and self.nontrivial

    def __bool__(self):
        return self.ok


def clean(x: dict, q: int) -> CoeffMap:
    """Canonical residues with zero entries dropped, indices sorted."""
    return {int(i): int(c) % q for i, c in sorted(x.items()) if int(c) % q}


def lifted(x: dict, q: int) -> dict:
    return {i: balanced_lift(c, q) for i, c in x.items()}


def max_abs(x: dict, q: int) -> int:
    return max((abs(balanced_lift(c, q)) for c in x.values()), default=0)


def sparsity(x: dict) -> int:
    return sum(1 for c in x.values() if c)


def verify(P: Problem, x: dict) -> VerifyReport:
    F = P.family
    q, m = F.q, F.m
    xs = {int(i): int(c) % q for i, c in x.items() if int(c) % q}
    fails = []
    if any(i < 0 or i >= m for i in xs):
        raise DimensionMismatch(f"coefficient index outside [0, {m})")
    total = lin_comb(F.rows, xs, q, F.n)
    sums = total == P.target
    if not sums:
        fails.append("sums_to_target")
    inside = all(P.constraint_at(i).contains(c, q) for i, c in xs.items())
    if inside and len(xs) < m:
        inside = all(P.constraint_at(i).contains(0, q) for i in range(m) if i not in xs)
    if not inside:
        fails.append("in_constraint")
    nontrivial = bool(xs)
    if not nontrivial:
        fails.append("nontrivial")
    return VerifyReport(sums, inside, nontrivial, fails)


def is_zero_sum(F: VecFamily, x: dict) -> bool:
    return not any(lin_comb(F.rows, x, F.q, F.n))
