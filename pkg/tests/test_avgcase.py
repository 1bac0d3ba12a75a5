import random
from fractions import Fraction

import pytest

from zsf.avgcase import (
    affine_transfer,
    ap_interval_form,
    cis_simple,
    combine_012_to_01,
    solve_012,
    subset_sum_random,
    subset_with_sum,
)
from zsf.core import Binary, Explicit, Interval, Problem, Ternary012, verify
from zsf.errors import FailureError, PreconditionViolated, SampleFailure, TooFewGroups, TooFewVectors
from zsf.halving import sis_power2
from zsf.linalg import VecFamily, find_dependency
from zsf.thresholds import batch_count, sis_power2_threshold, subset_sum_threshold

from conftest import rand_family

HALF = Fraction(1, 2)


def pm1_17(G):
    return sis_power2(G, 4)


def test_subset_with_sum():
    assert subset_with_sum([2, None, 3, 4], 7, 5) == [0, 2]
    assert subset_with_sum([2, None, 3, 4], 7, 1) is None
    assert subset_with_sum([0, 0], 5, 1) is None
    assert subset_with_sum([None, None], 5, 1) is None
    assert subset_with_sum([3], 5, 3) == [0]


def test_combine_shortcuts():
    F = VecFamily(5, [(1,), (4,), (2,), (3,)])
    assert combine_012_to_01(F, [([0, 1], {0: 1, 1: 1})], None, 3) == {0: 1, 1: 1}
    assert combine_012_to_01(F, [([2, 3], {2: 2, 3: 2})], None, 3) == {2: 1, 3: 1}
    with pytest.raises(TooFewGroups):
        combine_012_to_01(F, [([0, 1, 2], {0: 1, 1: 2, 2: 1})], None, 3)


def test_combine_mixed_groups():
    # q=5, n=1: groups with mixed 1/2 coefficients, combined by a (+-1) solver
    q = 5
    rows, groups = [], []
    rng = random.Random(0)
    while len(groups) < 3:
        a, b = rng.randrange(1, q), rng.randrange(1, q)
        c = (-(a + 2 * b)) % q
        if c == 0:
            continue
        base = len(rows)
        rows += [(a,), (b,), (c,)]
        groups.append(([base, base + 1, base + 2], {base: 1, base + 1: 2, base + 2: 1}))
    F = VecFamily(q, rows)
    x = combine_012_to_01(F, groups, lambda G: sis_power2(G, 2), sis_power2_threshold(q, 1, 2))
    assert verify(Problem(F, Binary()), x)


def test_solve_012_all_ones():
    F = VecFamily(5, [(1,), (2,), (2,)])
    assert solve_012(F, find_dependency, 1, 2) == {0: 1, 1: 1, 2: 1}


def test_solve_012_uniform():
    q, n = 17, 1
    m = sis_power2_threshold(q, n, 4)
    d = batch_count(q, HALF)
    ok = 0
    for seed in range(30):
        F = rand_family(q, n, d * m + 1, seed)
        try:
            x = solve_012(F, pm1_17, d, m)
        except SampleFailure:
            continue
        assert verify(Problem(F, Ternary012()), x)
        ok += 1
    assert ok >= 15


def test_solve_012_adversarial():
    # every batch beta is 0 when all vectors are equal multiples on the pivot
    F = VecFamily(5, [(1, 0), (1, 0), (1, 0), (0, 1), (0, 1), (0, 1), (1, 1)])
    with pytest.raises(SampleFailure):
        solve_012(F, lambda G: {0: 1, 1: 4}, 2, 3)


def test_affine_transfer_dilation():
    F = rand_family(7, 1, 5, 0)
    x = affine_transfer(F, find_dependency, 2, 2, 0, 3)
    y = find_dependency(F.sub(range(2)))
    assert x == {i: 2 * c % 7 for i, c in y.items()}


def test_affine_transfer_interval_shift():
    q, s = 11, 2
    B = {(3 * a + 5) % q for a in range(-s, s + 1)}
    m = sis_power2_threshold(q, 1, 2)
    d = batch_count(q, HALF)
    ok = 0
    for seed in range(30):
        F = rand_family(q, 1, d * m + 1, seed)
        try:
            x = affine_transfer(F, lambda G: sis_power2(G, 2), m, 3, 5, d)
        except FailureError:
            continue
        assert verify(Problem(F, Explicit(B)), x)
        ok += 1
    assert ok >= 15


def test_affine_transfer_errors():
    F = rand_family(7, 1, 3, 0)
    with pytest.raises(PreconditionViolated):
        affine_transfer(F, find_dependency, 2, 0, 1, 1)
    with pytest.raises(TooFewVectors):
        affine_transfer(F, find_dependency, 2, 1, 1, 3)


@pytest.mark.parametrize("q,eps,need", [(5, HALF, 40), (7, Fraction(1, 10), 80)])
def test_subset_sum_random(q, eps, need):
    m = subset_sum_threshold(q, 1, eps)
    ok = 0
    for seed in range(100):
        F = rand_family(q, 1, m, seed)
        try:
            x = subset_sum_random(F, eps)
        except FailureError:
            continue
        assert verify(Problem(F, Binary()), x)
        ok += 1
    assert ok >= need


def test_subset_sum_zero_vector():
    m = subset_sum_threshold(5, 1, HALF)
    rows = [(1,)] * m
    rows[7] = (0,)
    assert subset_sum_random(VecFamily(5, rows), HALF) == {7: 1}


def test_ap_interval_form():
    a, b = ap_interval_form(2, 3, 2, 11)
    assert {(a * j + b) % 11 for j in range(-2, 3)} == {(2 + 3 * j) % 11 for j in range(5)}


def test_cis_simple():
    q = 5
    A = {0, 1, 3, 4}
    m = 200
    ok = 0
    for seed in range(20):
        F = rand_family(q, 1, m, seed)
        try:
            x = cis_simple(F, A)
        except FailureError:
            continue
        assert verify(Problem(F, Explicit(A)), x)
        ok += 1
    assert ok >= 8
    F = rand_family(7, 2, 3, 0)
    assert verify(Problem(F, Interval(3)), cis_simple(F, range(7)))


def test_cis_simple_q67():
    q = 67
    A = set(range(q)) - {10, 40}
    ok = 0
    for seed in range(5):
        F = rand_family(q, 1, 400, seed)
        try:
            x = cis_simple(F, A)
        except FailureError:
            continue
        assert verify(Problem(F, Explicit(A)), x)
        ok += 1
    assert ok >= 2
