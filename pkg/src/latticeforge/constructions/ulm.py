"""Finite truncations of the Ulm-type p-groups B_lambda.

Generators a(s) are indexed by nonempty strictly increasing sequences s
of integers below ``index_bound``; the relations are p a(i) = 0 and
p a(i1, i2, ..., in) = a(i2, ..., in).  The abelian group is analysed
through the Smith form of the relation matrix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from ..gf import is_prime
from .snf import smith_normal_form


def sequences(bound: int) -> list[tuple[int, ...]]:
    """Nonempty increasing sequences below ``bound``, shortest first."""
    out = []
    for n in range(1, bound + 1):
        out.extend(combinations(range(bound), n))
    return out


def relation_rows(p: int, gens: list[tuple[int, ...]]) -> list[list[int]]:
    col = {s: j for j, s in enumerate(gens)}
    rows = []
    for s in gens:
        r = [0] * len(gens)
        r[col[s]] = p
        if len(s) >= 2:
            r[col[s[1:]]] -= 1
        rows.append(r)
    return rows


@dataclass
class UlmGroup:
    p: int
    lam: int
    generators: list
    relations: list
    invariant_factors: list  # nontrivial cyclic orders, ascending
    _D: list
    _V: list

    @property
    def order(self) -> int:
        return math.prod(self.invariant_factors)

    @property
    def exponent(self) -> int:
        return max(self.invariant_factors, default=1)

    def coordinates(self, vec) -> list[int]:
        """Image of an integer combination of generators in the cyclic
        decomposition Z/d_1 + ... (one residue per diagonal entry)."""
        # U R V = D, so x -> x V is the change of basis on the quotient
        y = [sum(vec[i] * self._V[i][j] for i in range(len(vec))) for j in range(len(self._V[0]))]
        out = []
        for j, d in enumerate(self._diag()):
            out.append(y[j] % d if d else y[j])
        return out

    def _diag(self):
        n = len(self.generators)
        return [self._D[j][j] if j < len(self._D) else 0 for j in range(n)]

    def is_zero(self, vec) -> bool:
        return all(c == 0 for c in self.coordinates(vec))

    def generator_vector(self, s) -> list[int]:
        v = [0] * len(self.generators)
        v[self.generators.index(tuple(s))] = 1
        return v

    def element_order(self, vec) -> int:
        o = 1
        for c, d in zip(self.coordinates(vec), self._diag()):
            if c:
                o = math.lcm(o, d // math.gcd(c, d))
        return o

    def height(self, s) -> float:
        """p-height of the generator a(s) inside this group."""
        h = math.inf
        for c, d in zip(self.coordinates(self.generator_vector(s)), self._diag()):
            if c % d if d else c:
                k = 0
                while c % self.p == 0:
                    c //= self.p
                    k += 1
                h = min(h, k)
        return h

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "lambda": self.lam,
            "generators": len(self.generators),
            "invariant_factors": self.invariant_factors,
            "order": self.order,
            "exponent": self.exponent,
            "heights": {",".join(map(str, s)): self.height(s) for s in self.generators},
        }


def ulm_group(p: int, lam: int, index_bound: int | None = None) -> UlmGroup:
    if not is_prime(p):
        raise ValueError(f"p={p} is not prime")
    if lam < 0:
        raise ValueError("lambda must be >= 0")
    bound = lam if index_bound is None else index_bound
    if bound < lam:
        raise ValueError("index_bound must be >= lambda")
    gens = sequences(lam)
    if not gens:
        return UlmGroup(p, lam, [], [], [], [[]], [[]])
    rels = relation_rows(p, gens)
    D, _, V = smith_normal_form(rels)
    diag = [D[i][i] for i in range(len(gens))]
    if any(d == 0 for d in diag):
        raise AssertionError("relation matrix should have full rank")
    return UlmGroup(p, lam, gens, rels, sorted(d for d in diag if d != 1), D, V)


def natural_map_respects_relations(p: int, lam: int, mu: int) -> bool:
    """a(s) -> a(s) from the lambda truncation into the mu truncation
    kills every relation of the source."""
    if lam > mu:
        raise ValueError("need lambda <= mu")
    src = ulm_group(p, lam)
    dst = ulm_group(p, mu)
    col = {s: j for j, s in enumerate(dst.generators)}
    for row in src.relations:
        image = [0] * len(dst.generators)
        for s, c in zip(src.generators, row):
            image[col[s]] += c
        if not dst.is_zero(image):
            return False
    return True
