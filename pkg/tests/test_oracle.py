import pytest

from zsf.core import Binary, Interval, Problem, verify
from zsf.errors import BudgetExceeded
from zsf.linalg import VecFamily
from zsf.oracle import brute_solve, budget_from_env, tight_counterexample, totality_check


def test_brute_examples():
    assert brute_solve(Problem(VecFamily(3, [(1,), (1,)]), Binary())) is None
    assert brute_solve(Problem(VecFamily(3, [(1,), (2,)]), Binary())) == {0: 1, 1: 1}
    P = Problem(VecFamily(5, [(1,), (1,)]), Interval(2))
    x = brute_solve(P)
    assert x == {0: 1, 1: 4} and verify(P, x)


def test_brute_budget(monkeypatch):
    P = Problem(VecFamily(5, [(1,)] * 10), Interval(2))
    with pytest.raises(BudgetExceeded):
        brute_solve(P, budget=1000)
    monkeypatch.setenv("ZSF_BUDGET", "100")
    assert budget_from_env() == 100
    with pytest.raises(BudgetExceeded):
        brute_solve(P)
    monkeypatch.setenv("ZSF_BUDGET", "2e6")
    assert budget_from_env() == 2_000_000


def test_totality_q3():
    rep = totality_check(3, 1, 3)
    assert rep.families == 27 and rep.total
    assert rep.counterexample.m == 2 and rep.counterexample_solved is False
    rep = totality_check(3, 1, 2)
    assert not rep.total and ((1,), (1,)) in rep.unsolved


def test_tight_counterexample():
    F = tight_counterexample(5, 1)
    assert list(F.rows) == [(1,)] * 4
    assert brute_solve(Problem(F, Binary())) is None
    F = tight_counterexample(3, 2)
    assert F.m == 4 and brute_solve(Problem(F, Binary())) is None
