"""General reducible vectors, forests of partial zero-sums and the solvers built on them.

A partition H_0, ..., H_K of F_q with H_i inside +-B_i drives everything: a
zero-sum whose coefficients hit every cell is turned into a (+-1)-sum u such
that c*u, for any c outside H_0, can be rewritten with coefficients in
H' = (+-H_0) | (B_1 - B_1) | ... | (B_K - B_K).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .avgcase import affine_transfer, subset_sum_random
from .core import clean
from .errors import (
    BadK,
    BadPartition,
    CaseDispatchFailure,
    KTooLarge,
    PreconditionViolated,
    TooFewVectors,
)
from .ff import Modulus, balanced_lift, inverse
from .halving import choose_sparse_combination
from .linalg import VecFamily, as_family, greedy_basis, lin_comb
from .thresholds import (
    batch_count,
    centered_exact,
    f3_threshold,
    improved_k,
    one_shot_exact,
    size_two_threshold,
    sis_power2_threshold,
    sparse_support_bound,
    tree_levels,
    tree_sparsity,
    engine_threshold,
)

MAX_K = 8


# ---- coefficient sets ----

SMALL_Q = 1 << 16  # above this, sets stay symbolic and are never enumerated


class FieldSet:
    """A subset of F_q; explicit, an interval, or a union of those."""

    q: int

    def __contains__(self, x) -> bool:
        raise NotImplementedError

    @property
    def members(self) -> frozenset:
        raise NotImplementedError

    def __iter__(self):
        return iter(sorted(self.members))

    def __len__(self):
        return len(self.members)

    def pm(self) -> "FieldSet":
        return CoeffSet(self.q, self.members | {-a for a in self.members})

    def minus(self, other: "FieldSet") -> "FieldSet":
        return CoeffSet(self.q, {a - b for a in self.members for b in other.members})

    def __or__(self, other: "FieldSet") -> "FieldSet":
        return Union((self, other))

    def __and__(self, other: "FieldSet") -> "CoeffSet":
        if isinstance(other, CoeffSet):
            return CoeffSet(self.q, {x for x in other.members if x in self})
        return CoeffSet(self.q, {x for x in self.members if x in other})


class CoeffSet(FieldSet):
    def __init__(self, q: int, members: Iterable[int]):
        self.q = q
        self._members = frozenset(int(a) % q for a in members)

    def __contains__(self, x):
        return x % self.q in self._members

    @property
    def members(self) -> frozenset:
        return self._members

    def __or__(self, other):
        if isinstance(other, CoeffSet):
            return CoeffSet(self.q, self._members | other._members)
        return Union((self, other))

    def __eq__(self, other):
        return isinstance(other, FieldSet) and self.q == other.q and self.members == other.members

    def __hash__(self):
        return hash((self.q, self._members))

    def __repr__(self):
        return f"CoeffSet(q={self.q}, {sorted(self._members)})"


class Span(FieldSet):
    """The residues of the integers lo..hi."""

    def __init__(self, q: int, lo: int, hi: int):
        if hi < lo:
            raise ValueError("empty span")
        if hi - lo + 1 >= q:
            lo, hi = 0, q - 1
        self.q, self.lo, self.hi = q, lo, hi

    def __contains__(self, x):
        return (x - self.lo) % self.q <= self.hi - self.lo

    @property
    def members(self) -> frozenset:
        return frozenset(x % self.q for x in range(self.lo, self.hi + 1))

    def __len__(self):
        return self.hi - self.lo + 1

    def pm(self):
        if self.lo == -self.hi:
            return self
        return Union((self, Span(self.q, -self.hi, -self.lo)))

    def minus(self, other):
        if isinstance(other, Span):
            return Span(self.q, self.lo - other.hi, self.hi - other.lo)
        return super().minus(other)

    def __repr__(self):
        return f"Span(q={self.q}, {self.lo}..{self.hi})"


class Union(FieldSet):
    def __init__(self, parts):
        parts = tuple(parts)
        self.q = parts[0].q
        self.parts = parts

    def __contains__(self, x):
        return any(x in p for p in self.parts)

    @property
    def members(self) -> frozenset:
        out = frozenset()
        for p in self.parts:
            out |= p.members
        return out

    def pm(self):
        return Union(p.pm() for p in self.parts)

    def __repr__(self):
        return "Union(" + ", ".join(map(repr, self.parts)) + ")"


def _cs(q: int, S) -> FieldSet:
    if isinstance(S, FieldSet):
        if S.q != q:
            raise BadPartition(f"set over F_{S.q} used with q={q}")
        return S
    return CoeffSet(q, S)


def interval_set(q: int, lo: int, hi: int) -> Span:
    return Span(q, lo, hi)


# ---- the starting point ----

Start = Callable[[VecFamily], dict]


def nontrivial_start(F, A, r: int = 1) -> dict:
    """Sparse zero-sum whose coefficients include every element of A."""
    F = as_family(F)
    q, n = F.q, F.n
    A = sorted({a % q for a in A})
    if not A:
        raise PreconditionViolated("A must be nonempty")
    if 0 in A:
        raise PreconditionViolated("0 must not lie in A")
    if r < 1:
        raise PreconditionViolated("r must be at least 1")
    need = n + r * len(A)
    if F.m < need:
        raise TooFewVectors(need, F.m)
    sub = F.sub(range(need))
    basis, el = greedy_basis(sub)
    bset = set(basis)
    extras = [j for j in range(need) if j not in bset][: r * len(A)]
    groups = [extras[g * len(A):(g + 1) * len(A)] for g in range(r)]
    columns = []
    for grp in groups:
        col: dict[int, int] = {}
        for a, j in zip(A, grp):
            for t, c in el.coords(sub.rows[j]).items():
                col[t] = (col.get(t, 0) + a * c) % q
        columns.append(col)
    beta = choose_sparse_combination(columns, q)
    first = next(b for b in beta if b)
    norm = inverse(first, q)
    beta = [b * norm % q for b in beta]
    out: dict[int, int] = {}
    comb: dict[int, int] = {}
    for b, grp, col in zip(beta, groups, columns):
        if not b:
            continue
        for a, j in zip(A, grp):
            out[j] = b * a % q
        for t, c in col.items():
            comb[t] = (comb.get(t, 0) + b * c) % q
    for t, c in comb.items():
        if c:
            out[t] = (-c) % q
    assert len(out) <= sparse_support_bound(q, len(basis), r) - r + r * len(A)
    return clean(out, q)


def default_start(A, r: int = 1) -> Start:
    return lambda G: nontrivial_start(G, A, r)


# ---- reducible vectors ----

@dataclass
class Node:
    Q: tuple
    index: int | None = None  # source index for leaves
    children: list = field(default_factory=list)  # (node, cell, alpha, beta)
    alpha: dict = field(default_factory=dict)  # local zero-sum over the children


@dataclass(frozen=True)
class Leaf:
    index: int
    cells: tuple
    alphas: tuple
    betas: tuple


def _sign(perm: Sequence[int]) -> int:
    s = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                s = -s
    return s


class Partition:
    """Cells H_0..H_K of F_q with H_i inside +-B_i for i >= 1."""

    def __init__(self, q: int, cells: Sequence, B: Sequence, A=()):
        self.q = q
        self.cells = [_cs(q, H) for H in cells]
        self.B = [None] + [_cs(q, b) for b in B]
        self.K = len(self.cells) - 1
        if self.K < 1 or len(self.B) != self.K + 1:
            raise BadPartition("need cells H_0..H_K and sets B_1..B_K")
        self.where: dict[int, int] | None = None
        if q <= SMALL_Q:
            self._check_explicit()
        hp = self.cells[0].pm()
        for i in range(1, self.K + 1):
            hp = hp | self.B[i].minus(self.B[i])
        self.H_prime = CoeffSet(q, hp.members) if q <= SMALL_Q else hp
        if A:
            _check_A(self, A)

    def _check_explicit(self):
        q = self.q
        self.where = {}
        for i, H in enumerate(self.cells):
            if not H.members:
                raise BadPartition(f"cell H_{i} is empty")
            for x in H.members:
                if x in self.where:
                    raise BadPartition(f"{x} lies in two cells")
                self.where[x] = i
        if len(self.where) != q:
            raise BadPartition("cells must cover F_q")
        for i in range(1, self.K + 1):
            if not self.cells[i].members <= self.B[i].pm().members:
                raise BadPartition(f"H_{i} is not inside +-B_{i}")

    def cell(self, x: int) -> int:
        x %= self.q
        if self.where is not None:
            return self.where[x]
        for i, H in enumerate(self.cells):
            if x in H:
                return i
        raise BadPartition(f"{x} lies in no cell")

    def beta(self, x: int) -> int:
        i = self.cell(x)
        if i == 0 or x % self.q in self.B[i]:
            return 1
        return -1


class GeneralReducible:
    """A (+-1)-sum u over the leaves of a forest, reducible for H_1..H_K."""

    def __init__(self, part: Partition, root: Node, A0: CoeffSet, sparsity: int):
        self.part = part
        self.q = part.q
        self.K = part.K
        self.root = root
        self.A0 = A0
        self.H_prime = part.H_prime
        self.sparsity = sparsity
        self.leaves = self._collect(root, (), (), ())
        self.leaf_set = sorted(l.index for l in self.leaves)
        perms = set(itertools.permutations(range(1, self.K + 1)))
        u: dict[int, int] = {}
        for l in self.leaves:
            if l.cells in perms:
                u[l.index] = _sign(l.cells) * _prod(l.betas)
        self.u_coeffs = u
        assert len(self.leaf_set) <= sparsity

    def _collect(self, z: Node, cells, alphas, betas) -> list[Leaf]:
        if z.index is not None:
            return [Leaf(z.index, cells, alphas, betas)]
        out = []
        for child, i, a, b in z.children:
            out += self._collect(child, cells + (i,), alphas + (a,), betas + (b,))
        return out

    @property
    def H(self) -> FieldSet:
        return Union(self.part.cells[1:])

    def vector(self, F: VecFamily) -> tuple:
        return lin_comb(F.rows, self.u_coeffs, F.q, F.n)

    def expand_parts(self, c: int) -> tuple[dict, dict, dict]:
        """(L*, L_0, L_1) for c in B_{i*}; c*u = L* - L_0 - L_1."""
        q, K = self.q, self.K
        c %= q
        i_star = self.part.cell(c)
        if i_star == 0 or c not in self.part.B[i_star]:
            raise ValueError(f"{c} is not in any B_i")
        rest = set(range(1, K + 1)) - {i_star}
        Ls, L0, L1 = {}, {}, {}
        for l in self.leaves:
            cells = l.cells
            pb = _prod(l.betas)
            ab = [a * b for a, b in zip(l.alphas, l.betas)]
            if sorted(cells) == list(range(1, K + 1)):
                j = cells.index(i_star)
                Ls[l.index] = (c - ab[j]) * _sign(cells) * pb % q
            elif cells.count(0) == 1 and i_star not in cells and set(cells) - {0} == rest:
                j = cells.index(0)
                pi = cells[:j] + (i_star,) + cells[j + 1:]
                L0[l.index] = _sign(pi) * ab[j] * pb % q
            elif 0 not in cells and set(cells) == rest and K >= 2:
                j = next(p for p in range(K) if cells.index(cells[p]) != p)
                j0 = cells.index(cells[j])
                pi = cells[:j0] + (i_star,) + cells[j0 + 1:]
                L1[l.index] = _sign(pi) * (ab[j0] - ab[j]) * pb % q
        return Ls, L0, L1

    def expand(self, c: int) -> dict:
        """Coefficients in H' over the leaves summing to c*u, for c outside H_0."""
        q = self.q
        c %= q
        i = self.part.cell(c)
        if i == 0:
            raise ValueError(f"{c} lies in H_0")
        if c not in self.part.B[i]:
            return {j: (-x) % q for j, x in self.expand(-c).items()}
        Ls, L0, L1 = self.expand_parts(c)
        out = dict(Ls)
        for part in (L0, L1):
            for j, x in part.items():
                out[j] = (out.get(j, 0) - x) % q
        return clean(out, q)

    def nodes(self) -> list[Node]:
        out, stack = [], [self.root]
        while stack:
            z = stack.pop()
            if z.index is None:
                out.append(z)
                stack.extend(ch for ch, *_ in z.children)
        return out


def _prod(xs) -> int:
    p = 1
    for x in xs:
        p *= x
    return p


class SimpleReducible(GeneralReducible):
    """K = 1: expand is the P + Q rewrite over S_0 and S_1."""

    def expand(self, c: int) -> dict:
        q = self.q
        c %= q
        if self.part.cell(c) != 1:
            raise ValueError(f"{c} is not in H_1")
        if c not in self.part.B[1]:
            return {j: (-x) % q for j, x in self.expand(-c).items()}
        out = {}
        for l in self.leaves:
            a, b = l.alphas[0], l.betas[0]
            if l.cells[0] == 0:
                out[l.index] = -a % q
            else:
                out[l.index] = (c - a * b) * b % q
        return clean(out, q)


def _attach(part: Partition, kids: list[Node], alpha: dict, dim: int) -> Node:
    q, K = part.q, part.K
    z = Node(Q=(), alpha=dict(alpha))
    sums = [[0] * dim for _ in range(K + 1)]
    for j, a in sorted(alpha.items()):
        i = part.cell(a)
        b = part.beta(a)
        z.children.append((kids[j], i, a, b))
        if i:
            for t, x in enumerate(kids[j].Q):
                sums[i][t] += b * x
    seen = {i for _, i, _, _ in z.children}
    if seen != set(range(K + 1)):
        raise BadPartition(f"zero-sum misses cells {sorted(set(range(K + 1)) - seen)}")
    z.Q = tuple(x % q for i in range(1, K + 1) for x in sums[i])
    return z


def _check_A(part: Partition, A) -> list[int]:
    q = part.q
    A = sorted({a % q for a in A})
    for i, H in enumerate(part.cells):
        if not any(a in H or -a in H for a in A):
            raise BadPartition(f"+-A misses H_{i}")
    return A


def _A0(part: Partition, A) -> CoeffSet:
    return CoeffSet(part.q, A).pm() & part.cells[0]


def reducible_simple(F, A, cells, B1, start: Start | None = None, m_of=None, s_of=None) -> SimpleReducible:
    """Reducible vector for a two-cell partition H_0, H_1 with H_1 inside +-B_1."""
    F = as_family(F)
    q = F.q
    part = Partition(q, cells, [B1])
    if part.K != 1:
        raise BadPartition("reducible_simple takes exactly two cells")
    A = _check_A(part, A)
    start = start or default_start(A)
    m_of = m_of or (lambda d: d + len(A))
    s_of = s_of or m_of
    need = m_of(F.n)
    if F.m < need:
        raise TooFewVectors(need, F.m)
    alpha = start(F.sub(range(need)))
    leaves = [Node(Q=F.rows[i], index=i) for i in range(need)]
    root = _attach(part, leaves, alpha, F.n)
    return SimpleReducible(part, root, _A0(part, A), s_of(F.n))


def reducible_tree(F, A, cells, B, start: Start | None = None, m_of=None, s_of=None) -> GeneralReducible:
    """Reducible vector for K >= 2 cells outside H_0, built as a forest of depth K+1."""
    F = as_family(F)
    q, n = F.q, F.n
    part = Partition(q, cells, B)
    K = part.K
    if K > MAX_K:
        raise KTooLarge(f"K={K} exceeds {MAX_K}")
    A = _check_A(part, A)
    start = start or default_start(A)
    m_of = m_of or (lambda d: d + len(A))
    s_of = s_of or m_of
    levels = tree_levels(n, K, m_of, s_of)
    need = levels[-1]
    if F.m < need:
        raise TooFewVectors(need, F.m)
    current = [Node(Q=F.rows[i], index=i) for i in range(need)]
    for ell in range(K, 0, -1):
        dim = K ** (K - ell) * n
        take = m_of(dim)
        pool = current
        built = []
        for _ in range(levels[ell - 1]):
            if len(pool) < take:
                raise TooFewVectors(take, len(pool), "tree nodes")
            S = pool[:take]
            alpha = start(VecFamily.trusted(q, [z.Q for z in S], dim))
            built.append(_attach(part, S, alpha, dim))
            pool = [z for j, z in enumerate(pool) if j not in alpha]
        current = built
    cls = SimpleReducible if K == 1 else GeneralReducible
    return cls(part, current[0], _A0(part, A), tree_sparsity(n, K, s_of))


def build_reducible(F, A, cells, B, start=None, m_of=None, s_of=None) -> GeneralReducible:
    if len(cells) == 2:
        return reducible_simple(F, A, cells, B[0], start, m_of, s_of)
    return reducible_tree(F, A, cells, B, start, m_of, s_of)


def lift_zero_sum(F, A, cells, B, start: Start | None = None, m_of=None, s_of=None) -> dict:
    """H'-zero-sum from m(n) reducible vectors combined by one more start call."""
    F = as_family(F)
    q, n = F.q, F.n
    part = Partition(q, cells, B)
    K = part.K
    A = _check_A(part, A)
    start = start or default_start(A)
    m_of = m_of or (lambda d: d + len(A))
    s_of = s_of or m_of
    per = tree_levels(n, K, m_of, s_of)[-1]
    M = m_of(n)
    need = M * per
    if F.m < need:
        raise TooFewVectors(need, F.m)
    reds, us = [], []
    for j in range(M):
        G = F.sub(range(j * per, (j + 1) * per))
        red = build_reducible(G, A, cells, B, start, m_of, s_of)
        reds.append(red)
        us.append(red.vector(G))
    beta = start(VecFamily.trusted(q, us, n))
    out: dict[int, int] = {}
    for j, b in beta.items():
        base = j * per
        if part.cell(b) == 0:
            part_map = {i: b * s for i, s in reds[j].u_coeffs.items()}
        else:
            part_map = reds[j].expand(b)
        for i, x in part_map.items():
            out[base + i] = x % q
    out = clean(out, q)
    assert len(out) <= s_of(n) * tree_sparsity(n, K, s_of)
    return out


# ---- worst-case solvers ----

def one_shot_partition(q: int, k: int) -> tuple[list[FieldSet], list[Span], list[int]]:
    """Cells, B_i and A' for the bounded zero-sum with bound floor(q/2k)."""
    h = q // (2 * k)
    K = k - 1
    lo, hi = h + 1, q // 2
    base, extra = divmod(hi - lo + 1, K)
    Bs, start = [], lo
    for i in range(K):
        ln = base + (1 if i < extra else 0)
        # B_i - B_i must stay inside H_0
        assert 1 <= ln <= h + 1, (q, k, i, ln)
        Bs.append(Span(q, start, start + ln - 1))
        start += ln
    cells = [Span(q, -h, h)] + [b.pm() for b in Bs]
    A1 = [1] + [b.lo for b in Bs]
    return cells, Bs, A1


def sis_one_shot(F, k: int) -> dict:
    """Nontrivial (+-floor(q/2k))-zero-sum with a single lift, 2 <= k <= q//2."""
    F = as_family(F)
    q = F.q
    if q < 5:
        raise PreconditionViolated("needs q >= 5")
    if not 2 <= k <= q // 2:
        raise BadK(f"k={k} outside [2, {q // 2}]")
    if k - 1 > MAX_K:
        raise KTooLarge(f"k={k} needs {k - 1} cells beyond H_0")
    need = one_shot_exact(F.n, k)
    if F.m < need:
        raise TooFewVectors(need, F.m)
    cells, Bs, A1 = one_shot_partition(q, k)
    f = lambda d: d + k
    return lift_zero_sum(F.sub(range(need)), A1, cells, Bs, default_start(A1), f, f)


def centered_a0(q: int, pairs: Sequence[int]) -> int:
    banned = {a % q for a in pairs} | {-a % q for a in pairs}
    for t in range(1, q // 2 + 1):
        if t not in banned:
            return t
    raise BadK("every nonzero residue is forbidden")


def _canon_pairs(q: int, pairs) -> list[int]:
    out = sorted({abs(balanced_lift(a, q)) for a in pairs})
    if 0 in out:
        raise PreconditionViolated("0 cannot be forbidden")
    return out


def cis_centered(F, pairs: Sequence[int]) -> dict:
    """Nontrivial zero-sum avoiding every coefficient +-a_i, worst case."""
    F = as_family(F)
    q = F.q
    if q < 5:
        raise PreconditionViolated("needs q >= 5")
    pairs = _canon_pairs(q, pairs)
    k = len(pairs)
    if not 1 <= k < q // 2:
        raise BadK(f"k={k} forbidden pairs outside [1, {q // 2 - 1}]")
    if k > MAX_K:
        raise KTooLarge(f"k={k} exceeds {MAX_K}")
    need = centered_exact(F.n, k)
    if F.m < need:
        raise TooFewVectors(need, F.m)
    banned = {a for a in pairs} | {q - a for a in pairs}
    cells = [CoeffSet(q, set(range(q)) - banned)] + [CoeffSet(q, (a, -a)) for a in pairs]
    Bs = [CoeffSet(q, (a,)) for a in pairs]
    A1 = [centered_a0(q, pairs)] + list(pairs)
    f = lambda d: d + k + 1
    return lift_zero_sum(F.sub(range(need)), A1, cells, Bs, default_start(A1), f, f)


# ---- average-case solvers ----

def _affine_need(inner: int, d: int, b: int, q: int) -> int:
    return inner if b % q == 0 else d * inner + 1


def subset_sum_improved(F, eps=Fraction(1, 2)) -> dict:
    """{0,1}-zero-sum on uniform inputs with the one-shot (+-1) engine."""
    return subset_sum_random(F, eps, engine="one_shot")


def size_two_plan(q: int, A) -> tuple[int, int]:
    A = sorted({a % q for a in A})
    if len(A) != 2:
        raise PreconditionViolated("A must have exactly two elements")
    x, y = A
    return (y - x) % q, x


def size_two(F, A, eps=Fraction(1, 2), engine: str = "one_shot") -> dict:
    """A-zero-sum for a two-element A = a{0,1} + b on uniform inputs."""
    from .thresholds import size_two_params, subset_sum_threshold

    F = as_family(F)
    q = F.q
    if q < 5:
        raise PreconditionViolated("needs q >= 5")
    a, b = size_two_plan(q, A)
    d, inner_eps = size_two_params(q, eps)
    if b == 0:
        inner_eps = Fraction(eps)
    mbar = subset_sum_threshold(q, F.n, inner_eps, engine)
    inner = lambda G: subset_sum_random(G, inner_eps, engine)
    return affine_transfer(F, inner, mbar, a, b, d)


def cis_paired(F, pairs: Sequence[int], a: int = 1, b: int = 0, eps=Fraction(1, 2)) -> dict:
    """(a*A + b)-zero-sum where A = F_q minus {+-a_i}, on uniform inputs."""
    F = as_family(F)
    q = F.q
    a, b = a % q, b % q
    if a == 0:
        raise PreconditionViolated("a must be nonzero")
    if a == 1 and b == 0:
        return cis_centered(F, pairs)
    k = len(_canon_pairs(q, pairs))
    mbar = centered_exact(F.n, k)
    return affine_transfer(F, lambda G: cis_centered(G, pairs), mbar, a, b, batch_count(q, eps))


# ---- full CIS dispatch ----

@dataclass
class Route:
    name: str
    threshold: int
    params: dict
    table: bool = False


@dataclass
class CISPlan:
    q: int
    n: int
    c: int
    case: str
    routes: list  # the dispatch-table route first when it exists

    @property
    def table_route(self) -> Route:
        return self.routes[0]

    def cheapest(self) -> Route:
        return min(self.routes, key=lambda r: r.threshold)


def _ap_routes(q: int, n: int, B: frozenset, eps) -> list[Route]:
    from .arith import find_ap

    out = []
    d = batch_count(q, eps)
    k = 2
    while 4 * k <= 2 * q and k <= q // 2:
        s = q // (2 * k)
        ap = find_ap(B, q, 2 * s + 1)
        if ap is not None:
            a, b = ap.step % q, (ap.start + s * ap.step) % q
            mbar = sis_power2_threshold(q, n, k)
            out.append(Route(f"ap_power2_k{k}", _affine_need(mbar, d, b, q),
                             {"kind": "ap", "k": k, "a": a, "b": b, "mbar": mbar, "d": d}))
        k *= 2
    return out


def _size_two_route(q: int, n: int, B: frozenset, eps, engine: str, table: bool) -> Route:
    A2 = sorted(B)[:2]
    t = size_two_threshold(q, n, eps, engine)
    return Route(f"size_two_{engine}", t, {"kind": "size_two", "A": A2, "engine": engine}, table)


def plan_cis_full(q: int, n: int, B, eps=Fraction(1, 2)) -> CISPlan:
    """Case of the dispatch table for B plus every applicable route with its threshold."""
    from .arith import antipodal_hole, middle_3ap

    Modulus(q)
    B = frozenset(x % q for x in B)
    c = q - len(B)
    if not 1 <= c <= q - 2:
        raise PreconditionViolated(f"co-size c={c} outside [1, {q - 2}]")
    d = batch_count(q, eps)
    routes: list[Route] = []
    if q == 3:
        x, y = sorted(B)
        a, b = (y - x) % q, x
        routes.append(Route("f3_affine", _affine_need(f3_threshold(n), d, b, q),
                            {"kind": "f3", "a": a, "b": b, "d": d}, True))
        return CISPlan(q, n, c, "q3", routes)
    half = q // 2
    try:
        if c == 1:
            case = "c1"
            (x,) = set(range(q)) - B
            pairs, a, b = [half], 1, (x - half) % q
        elif c <= (q - 1) // 2:
            case = "antipodal"
            x, z, _ = antipodal_hole(B, q)
            A = {(t - z) % q for t in B}
            pairs = _canon_pairs(q, set(range(q)) - A)
            a, b = 1, z
        elif c == (q + 1) // 2 and q >= 11:
            case = "middle_3ap"
            ap = middle_3ap(B, q)
        else:
            case = "size_two"
    except PreconditionViolated as e:
        raise CaseDispatchFailure(f"case for q={q}, c={c}: {e}") from e
    if case in ("c1", "antipodal"):
        k = len(pairs)
        mbar = centered_exact(n, k)
        routes.append(Route(f"paired_k{k}", _affine_need(mbar, d, b, q),
                            {"kind": "paired", "pairs": pairs, "a": a, "b": b}, True))
    elif case == "middle_3ap":
        k = improved_k(q)
        mbar = engine_threshold(q, n, "one_shot")
        a, b = ap.step % q, (ap.start + ap.step) % q
        routes.append(Route(f"ap_one_shot_k{k}", _affine_need(mbar, d, b, q),
                            {"kind": "ap", "k": k, "engine": "one_shot", "a": a, "b": b,
                             "mbar": mbar, "d": d}, True))
    else:
        routes.append(_size_two_route(q, n, B, eps, "one_shot", True))
    # cheaper routes that apply to the same B
    routes.append(_size_two_route(q, n, B, eps, "power2", False))
    routes += _ap_routes(q, n, B, eps)
    return CISPlan(q, n, c, case, routes)


def _run_route(F: VecFamily, route: Route, eps) -> dict:
    from .f3 import f3_solve
    from .halving import sis_power2

    p = route.params
    kind = p["kind"]
    if kind == "f3":
        return affine_transfer(F, f3_solve, f3_threshold(F.n), p["a"], p["b"], p["d"])
    if kind == "paired":
        return cis_paired(F, p["pairs"], p["a"], p["b"], eps)
    if kind == "size_two":
        return size_two(F, p["A"], eps, p["engine"])
    if kind == "ap":
        k = p["k"]
        if p.get("engine") == "one_shot":
            inner = lambda G: sis_one_shot(G, k)
        else:
            inner = lambda G: sis_power2(G, k)
        return affine_transfer(F, inner, p["mbar"], p["a"], p["b"], p["d"])
    raise CaseDispatchFailure(f"unknown route {route.name}")  # unreachable


def cis_full(F, B, eps=Fraction(1, 2), route: str | None = None) -> dict:
    """Nontrivial B-zero-sum for |B| = q - c on uniform inputs.

    The dispatch-table route is used whenever the input is large enough for it;
    otherwise the cheapest applicable route that fits is taken. `route` forces
    a route by name.
    """
    F = as_family(F)
    plan = plan_cis_full(F.q, F.n, B, eps)
    if route is not None:
        chosen = next((r for r in plan.routes if r.name == route), None)
        if chosen is None:
            raise CaseDispatchFailure(f"route {route!r} not available in case {plan.case}")
    elif F.m >= plan.table_route.threshold:
        chosen = plan.table_route
    else:
        fits = [r for r in plan.routes if r.threshold <= F.m]
        if not fits:
            need = min(r.threshold for r in plan.routes)
            raise TooFewVectors(need, F.m, f"case {plan.case}")
        chosen = min(fits, key=lambda r: r.threshold)
    if F.m < chosen.threshold:
        raise TooFewVectors(chosen.threshold, F.m, chosen.name)
    return _run_route(F, chosen, eps)
