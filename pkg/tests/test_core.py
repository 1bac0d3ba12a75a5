import pytest

from zsf.core import (
    Binary,
    Explicit,
    Forbidden,
    Interval,
    Problem,
    Ternary012,
    clean,
    max_abs,
    parse_constraint,
    sparsity,
    verify,
)
from zsf.errors import DimensionMismatch, PreconditionViolated
from zsf.linalg import VecFamily


def test_verify_examples():
    assert verify(Problem(VecFamily(3, [(1,), (2,)]), Binary()), {0: 1, 1: 1}).ok
    rep = verify(Problem(VecFamily(7, [(1,), (1,)]), Interval(1)), {})
    assert not rep.ok and rep.failures == ["nontrivial"]
    assert verify(Problem(VecFamily(7, [(3,), (4,)]), Interval(1)), {0: 1, 1: 1})


def test_verify_names_each_failure():
    P = Problem(VecFamily(7, [(1,), (2,)]), Binary())
    rep = verify(P, {0: 3})
    assert rep.failures == ["sums_to_target", "in_constraint"]
    with pytest.raises(DimensionMismatch):
        verify(P, {5: 1})


def test_zero_outside_constraint_is_checked():
    # an index left at 0 must still be allowed when 0 is excluded
    P = Problem(VecFamily(5, [(1,), (4,), (2,)]), Forbidden({0}))
    assert not verify(P, {0: 1, 1: 1}).in_constraint


def test_target_and_per_index_constraints():
    F = VecFamily(5, [(1,), (2,)])
    assert verify(Problem(F, Binary(), target=(3,)), {0: 1, 1: 1})
    P = Problem(F, [Binary(), Interval(2)])
    assert verify(P, {0: 1, 1: 2})
    assert not verify(P, {0: 2, 1: 4})
    with pytest.raises(DimensionMismatch):
        Problem(F, [Binary()])
    with pytest.raises(DimensionMismatch):
        Problem(F, Binary(), target=(0, 0))


def test_sparsity_examples():
    assert sparsity({}) == 0
    assert sparsity({0: 1, 5: -1}) == 2
    assert sparsity({i: 1 for i in range(9)}) == 9


def test_constraint_invariants():
    with pytest.raises(PreconditionViolated):
        Interval(4).validate(7)
    with pytest.raises(PreconditionViolated):
        Interval(0).validate(7)
    with pytest.raises(PreconditionViolated):
        Explicit({1}).validate(7)
    with pytest.raises(PreconditionViolated):
        Forbidden({}).validate(7)
    with pytest.raises(PreconditionViolated):
        Forbidden(range(6)).validate(7)
    Explicit(range(7)).validate(7)
    assert Interval(2).members(7) == [0, 1, 2, 5, 6]
    assert Ternary012().members(5) == [0, 1, 2]
    assert Forbidden({3, -3}).members(7) == [0, 1, 2, 5, 6]


def test_parse_describe_roundtrip():
    for C in (Interval(3), Explicit({0, 2, 5}), Forbidden({1, 4}), Binary(), Ternary012()):
        assert parse_constraint(C.describe()) == C
    with pytest.raises(ValueError):
        parse_constraint("nope:1")


def test_clean_and_max_abs():
    assert clean({3: 7, 1: -1, 2: 0}, 7) == {1: 6}
    assert max_abs({0: 6, 1: 2}, 7) == 2
    assert max_abs({}, 7) == 0
