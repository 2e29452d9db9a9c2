"""The module V = (F_q^2)^I with the triangular-block action.

Vectors of V are tuples of length 2|I|; coordinate a of the poset
occupies positions 2a and 2a+1.  An element of the block group T is a
triple (A, X, B) with A, B in SL2(F_q) and X any 2x2 matrix; for a < b it
acts by sending v_a + w_b to (A v + X w)_a + (B w)_b and fixing every
other coordinate.  K0 is generated by these maps over all pairs a < b,
together with the single-block maps pi_a(A).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import product

from ..gf import GF, field as get_field, is_prime
from ..groups import CapExceeded, SL2
from ..order import Poset

FULL_T_LIMIT = 10_000


def _matrices(F: GF):
    return [((a, b), (c, d)) for a, b, c, d in product(range(F.q), repeat=4)]


@dataclass
class SL2Construction:
    F: GF
    poset: Poset
    generators: list = field(default_factory=list)  # (kind, data, matrix on V)
    full_T: bool = False

    @property
    def q(self) -> int:
        return self.F.q

    @property
    def dim(self) -> int:
        return 2 * self.poset.n

    def module_size(self) -> int:
        return self.F.q ** self.dim

    def zero(self):
        return (0,) * self.dim

    def vectors(self):
        return product(range(self.F.q), repeat=self.dim)

    def add(self, v, w):
        F = self.F
        return tuple(F.add(x, y) for x, y in zip(v, w))

    def coordinate(self, v, a):
        """p_a(v)"""
        return v[2 * a], v[2 * a + 1]

    def embed(self, a, u):
        """u_a: the vector u in coordinate a."""
        v = [0] * self.dim
        v[2 * a], v[2 * a + 1] = u
        return tuple(v)

    def V_of(self, J) -> frozenset:
        """V(J): vectors supported on the coordinates in J."""
        J = set(J)
        return frozenset(v for v in self.vectors() if all(v[2 * a] == v[2 * a + 1] == 0 for a in range(self.poset.n) if a not in J))

    # -- the actions ------------------------------------------------------

    def pi_ab_matrix(self, a, b, t):
        if not self.poset.lt(a, b):
            raise ValueError(f"pi_ab needs a < b in the poset, got {a}, {b}")
        A, X, B = t
        n = self.dim
        M = [[int(i == j) for j in range(n)] for i in range(n)]
        for r in range(2):
            for c in range(2):
                M[2 * a + r][2 * a + c] = A[r][c]
                M[2 * a + r][2 * b + c] = X[r][c]
                M[2 * b + r][2 * b + c] = B[r][c]
                M[2 * b + r][2 * a + c] = 0
        return tuple(map(tuple, M))

    def pi_a_matrix(self, a, A):
        n = self.dim
        M = [[int(i == j) for j in range(n)] for i in range(n)]
        for r in range(2):
            for c in range(2):
                M[2 * a + r][2 * a + c] = A[r][c]
        return tuple(map(tuple, M))

    def apply(self, M, v):
        return self.F.mat_vec(M, v)


def build_sl2(p: int, m: int, poset: Poset) -> SL2Construction:
    """Module and K0 generators.

    All of T is used per pair when |T| <= 10^4; otherwise elementary
    transvections in A and B plus the X-matrix units times an F_p-basis,
    which generate T.  pi_a(SL2) generators are added for every a.
    """
    if not is_prime(p):
        raise ValueError(f"p={p} is not prime")
    F = get_field(p, m)
    c = SL2Construction(F, poset)
    S = SL2(p, m)
    sl2_elems = S.elements()
    n_T = len(sl2_elems) ** 2 * F.q ** 4
    c.full_T = n_T <= FULL_T_LIMIT
    I2 = S.identity
    zero2 = ((0, 0), (0, 0))
    if c.full_T:
        Ts = [(A, X, B) for A in sl2_elems for X in _matrices(F) for B in sl2_elems]
    else:
        Ts = [(g, zero2, I2) for g in S.generators()] + [(I2, zero2, g) for g in S.generators()]
        for r, col in product(range(2), repeat=2):
            for lam in F.prime_basis():
                X = [[0, 0], [0, 0]]
                X[r][col] = lam
                Ts.append((I2, tuple(map(tuple, X)), I2))
    for a, b in poset.pairs():
        for t in Ts:
            c.generators.append((("pi_ab", a, b), t, c.pi_ab_matrix(a, b, t)))
    single = sl2_elems if c.full_T else S.generators()
    for a in range(poset.n):
        for A in single:
            c.generators.append((("pi_a", a), A, c.pi_a_matrix(a, A)))
    return c


def pi_ab_apply(c: SL2Construction, a: int, b: int, t, v):
    return c.apply(c.pi_ab_matrix(a, b, t), v)


def _span_add(F: GF, S: set, u) -> set:
    """S + F_p u for an additive subgroup S."""
    multiples = [tuple([0] * len(u))]
    x = u
    for _ in range(F.p - 1):
        multiples.append(x)
        x = tuple(F.add(a, b) for a, b in zip(x, u))
    return {tuple(F.add(a, b) for a, b in zip(s, k)) for s in S for k in multiples}


def sl2_difference_span(p: int, m: int, v) -> frozenset:
    """Additive subgroup of F_q^2 generated by {A v - v : A in SL2(F_q)}."""
    F = get_field(p, m)
    S = SL2(p, m)
    span = {(0, 0)}
    for A in S.elements():
        Av = F.mat_vec(A, v)
        d = (F.sub(Av[0], v[0]), F.sub(Av[1], v[1]))
        if d not in span:
            span = _span_add(F, span, d)
    return frozenset(span)


def invariant_closure(c: SL2Construction, v) -> frozenset:
    """Smallest K0-invariant additive subgroup containing v."""
    F = c.F
    S = {c.zero()}
    pending = deque([tuple(v)])
    while pending:
        u = pending.popleft()
        if u in S:
            continue
        S = _span_add(F, S, u)
        for _, _, M in c.generators:
            w = c.apply(M, u)
            if w not in S:
                pending.append(w)
    return frozenset(S)


def invariant_subgroups(c: SL2Construction, cap: int = 1 << 16) -> list[frozenset]:
    """All K0-invariant additive subgroups of V, smallest first.

    Every invariant subgroup is the sum of the invariant closures of its
    elements, so the closures of single vectors are collected and the
    family is closed under sums.
    """
    if c.module_size() > cap:
        raise CapExceeded(cap, c.module_size())
    closures = {}
    for v in c.vectors():
        if v not in closures:
            closures[v] = invariant_closure(c, v)
    family = {frozenset([c.zero()])} | set(closures.values())
    F = c.F
    changed = True
    while changed:
        changed = False
        items = sorted(family, key=len)
        for i, A in enumerate(items):
            for B in items[i + 1:]:
                if A <= B or B <= A:
                    continue
                Ssum = set(A)
                for b in B:
                    if b not in Ssum:
                        Ssum = _span_add(F, Ssum, b)
                Ssum = frozenset(Ssum)
                if Ssum not in family:
                    family.add(Ssum)
                    changed = True
    return sorted(family, key=lambda s: (len(s), sorted(s)))


def expected_subgroups(c: SL2Construction) -> list[frozenset]:
    """{V(J) : J downward closed}, in the same order convention."""
    return sorted({c.V_of(J) for J in c.poset.down_sets()}, key=lambda s: (len(s), sorted(s)))


def sl2_report(c: SL2Construction, cap: int = 1 << 16) -> dict:
    found = invariant_subgroups(c, cap)
    expected = expected_subgroups(c)
    return {
        "p": c.F.p,
        "m": c.F.m,
        "q": c.q,
        "poset": c.poset.to_json(),
        "module_size": c.module_size(),
        "k0_generators": len(c.generators),
        "full_T": c.full_T,
        "invariant_subgroups": len(found),
        "subgroup_sizes": [len(s) for s in found],
        "down_sets": len(expected),
        "matches_down_sets": found == expected,
    }
