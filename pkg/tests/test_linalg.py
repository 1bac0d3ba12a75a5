import random

import numpy as np
import pytest

from zsf.errors import NoDependency, ZeroVector
from zsf.linalg import (
    Eliminator,
    VecFamily,
    find_dependency,
    greedy_basis,
    lin_comb,
    max_independent,
    project_out,
    rank,
    span_split,
    to_matrix,
)


def is_dep(F, alpha):
    return any(c % F.q for c in alpha.values()) and not any(lin_comb(F.rows, alpha, F.q, F.n))


def test_find_dependency_examples():
    F = VecFamily(5, [(1, 0), (0, 1), (1, 1)])
    assert is_dep(F, find_dependency(F))
    assert find_dependency(VecFamily(7, [(0, 0)])) == {0: 1}
    with pytest.raises(NoDependency):
        find_dependency(VecFamily(5, [(1, 0), (0, 1)]))


def test_find_dependency_uses_first_rank_plus_one():
    rng = random.Random(0)
    for _ in range(200):
        q = rng.choice([3, 5, 7, 2 ** 61 - 1])
        n = rng.randint(1, 6)
        F = VecFamily(q, [[rng.randrange(q) for _ in range(n)] for _ in range(n + 2)])
        dep = find_dependency(F)
        assert is_dep(F, dep)
        r = rank(F)
        assert max(dep) <= r


def test_max_independent_examples():
    F = VecFamily(5, [(1, 0), (2, 0), (0, 1)])
    assert max_independent(F) == [0, 2]
    assert max_independent(F, "blocked") == [0, 2]
    Z = VecFamily(5, [(0, 0, 0)] * 4)
    assert max_independent(Z) == [] and max_independent(Z, "blocked") == []
    E = VecFamily(7, [tuple(int(i == j) for j in range(5)) for i in range(5)])
    assert max_independent(E, "blocked") == [0, 1, 2, 3, 4]


@pytest.mark.parametrize("q", [3, 5, 7, 2 ** 61 - 1])
def test_blocked_matches_naive(q):
    rng = random.Random(q % 1000)
    for _ in range(30):
        n, m = rng.randint(1, 20), rng.randint(1, 20)
        r = rng.randint(0, min(n, m))
        basis = [[rng.randrange(q) for _ in range(n)] for _ in range(r)]
        rows = []
        for _ in range(m):
            cs = [rng.randrange(q) for _ in range(r)]
            rows.append([sum(c * b[t] for c, b in zip(cs, basis)) % q for t in range(n)])
        F = VecFamily(q, rows, n)
        a, b = max_independent(F), max_independent(F, "blocked", block=rng.randint(1, 5))
        assert len(a) == len(b) == rank(F)
        assert rank(F.sub(b)) == len(b)


def test_span_split_examples():
    s = span_split((1, 2), VecFamily(5, [(3, 4)]))
    assert s.pivot_coord == 0 and s.components == ((3, (0, 3)),)
    s = span_split((1, 0), VecFamily(5, [(1, 0)]))
    assert s.components == ((1, (0, 0)),)
    with pytest.raises(ZeroVector):
        span_split((0, 0), VecFamily(5, [(1, 0)]))


def test_span_split_reconstruction():
    rng = random.Random(1)
    q = 13
    for _ in range(100):
        u = [rng.randrange(q) for _ in range(4)]
        if not any(u):
            continue
        F = VecFamily(q, [[rng.randrange(q) for _ in range(4)] for _ in range(5)])
        s = span_split(u, F)
        p = s.pivot_coord
        assert all(x == 0 for x in u[:p]) and u[p]
        for v, (c, w) in zip(F.rows, s.components):
            assert w[p] == 0
            assert tuple((c * a + b) % q for a, b in zip(u, w)) == v
        assert s.reduced_family(q).n == 3


def test_eliminator_coords():
    q = 11
    F = VecFamily(q, [(1, 2, 3), (0, 1, 4), (2, 5, 10)])
    basis, el = greedy_basis(F)
    assert basis == [0, 1]
    co = el.coords(F.rows[2])
    assert lin_comb(F.rows, co, q, 3) == F.rows[2]
    assert el.coords((0, 0, 1)) is None
    assert isinstance(el, Eliminator)


def test_projector_residuals_independent_of_span():
    rng = np.random.default_rng(3)
    q = 7
    for _ in range(30):
        V = rng.integers(0, q, size=(6, 2))
        U = rng.integers(0, q, size=(6, 3))
        R = project_out(U, V, q)
        rv = rank(VecFamily(q, [tuple(int(x) for x in c) for c in V.T], 6))
        rr = rank(VecFamily(q, [tuple(int(x) for x in c) for c in R.T], 6))
        both = rank(VecFamily(q, [tuple(int(x) for x in c) for c in np.hstack([V, R]).T], 6))
        assert both == rv + rr


def test_to_matrix_layout():
    M = to_matrix([(1, 2), (3, 4), (5, 6)], 7, 2)
    assert M.shape == (2, 3) and M[:, 1].tolist() == [3, 4]
