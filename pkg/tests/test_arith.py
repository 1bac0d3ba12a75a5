import itertools

import pytest

from zsf.arith import (
    APWitness,
    antipodal_hole,
    find_ap,
    lev_applies,
    lev_long_ap,
    middle_3ap,
    window_3ap,
)
from zsf.errors import NoY, PreconditionViolated


def test_lev_examples():
    w = lev_long_ap(set(range(1, 5)), 5)
    assert w.length >= 3 and w.inside(range(1, 5), 5)
    assert (w.start, w.step, w.length) == (1, 1, 4)
    w = lev_long_ap(set(range(7)) - {3}, 7)
    assert (w.start, w.step, w.length) == (5, 1, 5) and w.inside(set(range(7)) - {3}, 7)
    full = lev_long_ap(range(11), 11)
    assert full.length >= 6 and full.inside(range(11), 11)


@pytest.mark.parametrize("q", [5, 7, 11, 13])
def test_lev_exhaustive(q):
    for c in range(0, q):
        if 4 ** c > q + 2:
            break
        for holes in itertools.combinations(range(q), c):
            A = set(range(q)) - set(holes)
            assert lev_applies(A, q)
            w = lev_long_ap(A, q)
            assert w.length >= (q + 1) // 2 and w.inside(A, q)


def test_lev_preconditions():
    with pytest.raises(PreconditionViolated):
        lev_long_ap({1, 2}, 13)
    with pytest.raises(PreconditionViolated):
        lev_long_ap({1, 2}, 3)


def test_antipodal_examples():
    A = {0, 3, 4}
    assert antipodal_hole(A, 5) == (3, 4, 1)
    with pytest.raises(PreconditionViolated):
        antipodal_hole(set(), 5)
    with pytest.raises(PreconditionViolated):
        antipodal_hole(set(range(7)) - {2}, 7)
    x, z, y = antipodal_hole(set(range(7)) - {1, 6}, 7)
    A = set(range(7)) - {1, 6}
    assert z in A and (z + x) % 7 not in A and (z - x) % 7 not in A
    assert (z + y) % 7 in A and (z - y) % 7 in A and y not in (0, x, 7 - x)


def test_antipodal_no_y():
    # c >= (q+1)/2: the second part is not promised
    A = {0, 1}
    x, z, y = antipodal_hole(A, 5)
    assert y is None
    with pytest.raises(NoY):
        antipodal_hole(A, 5, require_y=True)


@pytest.mark.parametrize("q", [5, 7, 11, 13])
def test_antipodal_exhaustive(q):
    for c in range(2, (q + 1) // 2):
        for holes in itertools.combinations(range(q), c):
            A = set(range(q)) - set(holes)
            x, z, y = antipodal_hole(A, q, require_y=True)
            assert x and z in A and (z + x) % q not in A and (z - x) % q not in A
            assert y not in (0, x, q - x) and (z + y) % q in A and (z - y) % q in A


def test_window_all_patterns():
    seen = 0
    for half in itertools.product((0, 1), repeat=4):
        bits = {0: 0}
        for i, b in enumerate(half, 1):
            bits[i], bits[-i] = b, 1 - b
        j, k, l = window_3ap(bits)
        assert -4 <= j < k < l <= 4 and j + l == 2 * k
        assert bits[j] == bits[k] == bits[l] == 0
        mirror = {-i: b for i, b in bits.items()}
        jm, km, lm = window_3ap(mirror)
        assert mirror[jm] == mirror[km] == mirror[lm] == 0
        seen += 1
    assert seen == 16
    bits = dict(zip(range(-4, 5), (1, 1, 1, 1, 0, 0, 0, 0, 0)))
    assert window_3ap(bits) == (0, 1, 2)
    with pytest.raises(PreconditionViolated):
        window_3ap({i: 0 for i in range(-4, 5)})


@pytest.mark.parametrize("q", [11, 13])
def test_middle_exhaustive(q):
    for holes in itertools.combinations(range(q), (q + 1) // 2):
        A = set(range(q)) - set(holes)
        w = middle_3ap(A, q)
        assert w.length == 3 and w.inside(A, q)


def test_middle_examples():
    A = {10, 0, 1, 3, 5}
    w = middle_3ap(A, 11)
    assert w.inside(A, 11)
    with pytest.raises(PreconditionViolated):
        middle_3ap({0, 1, 2}, 7)
    with pytest.raises(PreconditionViolated):
        middle_3ap({0, 1, 2}, 11)


def test_find_ap():
    assert find_ap({0, 2, 4}, 7, 3) == APWitness(0, 2, 3)
    assert find_ap({0, 1}, 7, 3) is None
    assert APWitness(5, 3, 4).terms(7) == [5, 1, 4, 0]
    assert not APWitness(1, 0, 2).inside({1}, 7)
