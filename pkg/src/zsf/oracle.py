"""Exhaustive ground truth for tiny instances."""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field

from .core import Binary, Constraint, Problem, verify
from .errors import BudgetExceeded
from .linalg import VecFamily

DEFAULT_BUDGET = 2_000_000


def budget_from_env(default: int = DEFAULT_BUDGET) -> int:
    raw = os.environ.get("ZSF_BUDGET")
    if not raw:
        return default
    return int(float(raw))


def _space(P: Problem) -> list[list[int]]:
    q = P.family.q
    return [sorted(P.constraint_at(i).members(q)) for i in range(P.family.m)]


def brute_solve(P: Problem, budget: int | None = None) -> dict | None:
    """Lexicographically first nontrivial solution, or None."""
    F = P.family
    q, n = F.q, F.n
    budget = budget_from_env() if budget is None else budget
    space = _space(P)
    size = 1
    for s in space:
        size *= len(s)
    if size > budget:
        raise BudgetExceeded(f"{size} candidates exceed budget {budget}")
    target = P.target
    for combo in itertools.product(*space):
        if not any(combo):
            continue
        acc = [0] * n
        for c, v in zip(combo, F.rows):
            if c:
                for t in range(n):
                    acc[t] += c * v[t]
        if all((a - b) % q == 0 for a, b in zip(acc, target)):
            x = {i: c for i, c in enumerate(combo) if c}
            assert verify(P, x).ok
            return x
    return None


@dataclass
class TotalityReport:
    q: int
    n: int
    m: int
    families: int = 0
    unsolved: list = field(default_factory=list)
    counterexample: VecFamily | None = None
    counterexample_solved: bool | None = None

    @property
    def total(self) -> bool:
        return not self.unsolved


def tight_counterexample(q: int, n: int) -> VecFamily:
    """(q-1) copies of each standard basis vector: no nonempty zero subset."""
    rows = []
    for i in range(n):
        e = tuple(1 if t == i else 0 for t in range(n))
        rows += [e] * (q - 1)
    return VecFamily(q, rows, n)


def totality_check(q: int, n: int, m: int, constraint: Constraint | None = None,
                   budget: int | None = None) -> TotalityReport:
    """Solve every family of m vectors in F_q^n; also test the tight counterexample."""
    constraint = constraint or Binary()
    budget = budget_from_env() if budget is None else budget
    count = q ** (n * m)
    if count > budget:
        raise BudgetExceeded(f"{count} families exceed budget {budget}")
    rep = TotalityReport(q, n, m)
    vecs = list(itertools.product(range(q), repeat=n))
    for rows in itertools.product(vecs, repeat=m):
        F = VecFamily.trusted(q, rows, n)
        rep.families += 1
        if brute_solve(Problem(F, constraint), budget) is None:
            rep.unsolved.append(rows)
    cx = tight_counterexample(q, n)
    rep.counterexample = cx
    rep.counterexample_solved = brute_solve(Problem(cx, constraint), budget) is not None
    return rep
