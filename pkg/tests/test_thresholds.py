from fractions import Fraction

import pytest

from zsf.errors import BadK
from zsf.thresholds import (
    ceil_log,
    centered_bound,
    centered_exact,
    f3_closed_form,
    f3_main_level,
    f3_threshold,
    one_shot_bound,
    one_shot_exact,
    sis_power2_threshold,
    sis_quarter_threshold,
    sparse_support_bound,
    subset_power2_k,
    thresholds,
    tree_levels,
)


def test_f3_thresholds():
    assert f3_threshold(0) == 1
    for n in range(10):
        assert f3_threshold(n, "weak") == (n + 1) ** 2
        assert f3_threshold(n, "quadratic") == (n + 1) * (n + 2) // 2
        assert f3_main_level(n) <= f3_closed_form(n)
    # grows like n^2/3 rather than n^2/2
    assert f3_threshold(60) < f3_threshold(60, "quadratic")


def test_ceil_log():
    assert [ceil_log(3, x) for x in (1, 2, 3, 4, 9, 10)] == [0, 1, 1, 2, 2, 3]
    assert ceil_log(2, Fraction(5, 2)) == 2


def test_sparse_bound_fixture():
    # q=7, ell=3, r=2: floor((6/7)/(48/49) * 3) + 2
    assert sparse_support_bound(7, 3, 2) == 4
    assert sparse_support_bound(5, 2, 1) == 3


def test_sis_thresholds():
    assert sis_quarter_threshold(5, 1) == 3
    assert sis_power2_threshold(17, 1, 4) == sis_quarter_threshold(17, 1) ** 2
    with pytest.raises(BadK):
        sis_power2_threshold(5, 1, 4)
    with pytest.raises(BadK):
        sis_power2_threshold(17, 1, 3)


def test_one_shot_and_centered():
    assert one_shot_exact(1, 3) == 80
    assert one_shot_exact(2, 2) == 16
    assert centered_exact(1, 1) == 9
    for n in range(1, 5):
        for k in range(2, 6):
            assert one_shot_exact(n, k) <= one_shot_bound(n, k)
            assert centered_exact(n, k) <= centered_bound(n, k)


def test_tree_levels_recursion():
    f = lambda d: d + 3
    # level 2 works in dimension 2, level 3 in dimension 1
    assert tree_levels(1, 2, f, f) == [1, 0 * 5 + 5, (5 - 1) * 4 + 4]


def test_subset_power2_k():
    for q in (5, 7, 11, 13, 17, 257):
        k = subset_power2_k(q)
        assert q < 4 * k and k <= q // 2 and q // (2 * k) == 1


def test_thresholds_api():
    t = thresholds(3, 4)
    assert set(t) == {"f3_weak", "f3_quadratic", "f3_main"}
    t = thresholds(13, 1, k=3)
    assert t["sis_one_shot"] == 80 and "sis_power2" not in t
    assert thresholds(17, 2, k=4)["sis_power2"] == sis_power2_threshold(17, 2, 4)
