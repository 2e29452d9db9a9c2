"""Concrete factor groups behind one element interface.

A group object owns the arithmetic; elements are plain hashable values:

* ``Cyclic(n)``: residues ``0 <= k < n``
* ``Symmetric(n)`` / ``Alternating(n)``: image tuples on ``0..n-1``,
  composed right to left, ``(g*h)[x] = g[h[x]]``
* ``FreeGroup(rank)``: freely reduced tuples of ``(generator, exponent)``
* ``SL2(p, m)`` / ``MatrixGroup(p, m, degree)``: row tuples over GF(p^m)

``GElem`` pairs a value with its group for the operator-style API.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from itertools import permutations, product
from typing import Any, Iterable

from .gf import field, is_prime

DEFAULT_ORDER_BOUND = 10_000


class GroupMismatchError(ValueError):
    pass


class CapExceeded(RuntimeError):
    def __init__(self, cap: int, reached: int):
        super().__init__(f"closure exceeded cap={cap} (reached {reached} elements)")
        self.cap = cap
        self.reached = reached


class Group:
    """Common interface.  Subclasses set ``spec`` (a hashable tuple)."""

    spec: tuple
    is_finite: bool = True
    identity: Any

    def __eq__(self, other):
        return isinstance(other, Group) and self.spec == other.spec

    def __hash__(self):
        return hash(self.spec)

    def __repr__(self):
        return "{}({})".format(self.spec[0], ", ".join(map(str, self.spec[1:])))

    def mul(self, g, h):
        raise NotImplementedError

    def inv(self, g):
        raise NotImplementedError

    def contains(self, g) -> bool:
        raise NotImplementedError

    def is_identity(self, g) -> bool:
        return g == self.identity

    def power(self, g, n: int):
        if n < 0:
            g, n = self.inv(g), -n
        result, base = self.identity, g
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def elements(self) -> list:
        """All elements in canonical order (identity first)."""
        raise TypeError(f"{self!r} is infinite")

    def order(self) -> int | float:
        return len(self.elements()) if self.is_finite else math.inf

    def generators(self) -> list:
        raise NotImplementedError

    def sort_key(self, g):
        return g

    def element_order(self, g, bound: int = DEFAULT_ORDER_BOUND) -> int | float:
        x = g
        for k in range(1, bound + 1):
            if self.is_identity(x):
                return k
            x = self.mul(x, g)
        return math.inf

    def exponent_sum(self, g) -> int:
        raise TypeError(f"exponent sums are not defined on {self!r}")

    def to_json(self, g):
        return g

    def from_json(self, obj):
        g = obj
        if not self.contains(g):
            raise ValueError(f"{obj!r} is not an element of {self!r}")
        return g

    def format(self, g) -> str:
        return str(g)

    def spec_json(self) -> dict:
        raise NotImplementedError


class Cyclic(Group):
    def __init__(self, n: int):
        if n < 1:
            raise ValueError("cyclic group needs n >= 1")
        self.n = n
        self.spec = ("cyclic", n)
        self.identity = 0

    def mul(self, g, h):
        return (g + h) % self.n

    def inv(self, g):
        return (-g) % self.n

    def contains(self, g):
        return isinstance(g, int) and 0 <= g < self.n

    def elements(self):
        return list(range(self.n))

    def order(self):
        return self.n

    def generators(self):
        return [1 % self.n]

    def element_order(self, g, bound=DEFAULT_ORDER_BOUND):
        return self.n // math.gcd(g, self.n)

    def exponent_sum(self, g):
        return g

    def spec_json(self):
        return {"kind": "cyclic", "n": self.n}


class Symmetric(Group):
    def __init__(self, n: int):
        if n < 1:
            raise ValueError("symmetric group needs n >= 1")
        self.n = n
        self.spec = ("symmetric", n)
        self.identity = tuple(range(n))

    def mul(self, g, h):
        return tuple(g[i] for i in h)

    def inv(self, g):
        out = [0] * len(g)
        for i, gi in enumerate(g):
            out[gi] = i
        return tuple(out)

    def contains(self, g):
        return isinstance(g, tuple) and len(g) == self.n and sorted(g) == list(range(self.n))

    def elements(self):
        return [p for p in permutations(range(self.n)) if self.contains(p)]

    def order(self):
        return math.factorial(self.n)

    def generators(self):
        # adjacent transpositions (i, i+1)
        return [transposition(self.n, i, i + 1) for i in range(1, self.n)]

    def element_order(self, g, bound=DEFAULT_ORDER_BOUND):
        return math.lcm(1, *(len(c) for c in cycles(g)))

    def format(self, g):
        return format_cycles(g)

    def from_json(self, obj):
        return super().from_json(tuple(obj))

    def to_json(self, g):
        return list(g)

    def spec_json(self):
        return {"kind": "symmetric", "n": self.n}


class Alternating(Symmetric):
    def __init__(self, n: int):
        super().__init__(n)
        self.spec = ("alternating", n)

    def contains(self, g):
        return super().contains(g) and parity(g) == 0

    def order(self):
        return max(1, math.factorial(self.n) // 2)

    def generators(self):
        # 3-cycles (1 2 k), 1-based
        return [cycle_perm(self.n, (1, 2, k)) for k in range(3, self.n + 1)]

    def spec_json(self):
        return {"kind": "alternating", "n": self.n}


class FreeGroup(Group):
    is_finite = False

    def __init__(self, rank: int, names: Iterable[str] | None = None):
        if rank < 0:
            raise ValueError("rank must be >= 0")
        self.rank = rank
        self.spec = ("free", rank)
        self.identity = ()
        self.names = list(names) if names is not None else [f"x{i}" for i in range(rank)]

    def mul(self, g, h):
        out = list(g)
        for gen, e in h:
            if out and out[-1][0] == gen:
                e2 = out[-1][1] + e
                out.pop()
                if e2:
                    out.append((gen, e2))
            else:
                out.append((gen, e))
        return tuple(out)

    def inv(self, g):
        return tuple((gen, -e) for gen, e in reversed(g))

    def contains(self, g):
        if not isinstance(g, tuple):
            return False
        prev = None
        for syl in g:
            if len(syl) != 2 or not (0 <= syl[0] < self.rank) or syl[1] == 0 or syl[0] == prev:
                return False
            prev = syl[0]
        return True

    def generator(self, i: int, e: int = 1):
        return ((i, e),) if e else ()

    def generators(self):
        return [self.generator(i) for i in range(self.rank)]

    def element_order(self, g, bound=DEFAULT_ORDER_BOUND):
        return 1 if not g else math.inf

    def exponent_sum(self, g):
        return sum(e for _, e in g)

    def to_json(self, g):
        return [list(s) for s in g]

    def from_json(self, obj):
        return super().from_json(tuple(tuple(s) for s in obj))

    def format(self, g):
        if not g:
            return "e"
        return "".join(self.names[i] + (f"^{e}" if e != 1 else "") for i, e in g)

    def spec_json(self):
        return {"kind": "free", "rank": self.rank}


class MatrixGroup(Group):
    """GL(degree, p^m).  Finite, but only enumerated when asked."""

    def __init__(self, p: int, m: int = 1, degree: int = 2):
        if not is_prime(p):
            raise ValueError(f"p={p} is not prime")
        self.p, self.m, self.degree = p, m, degree
        self.F = field(p, m)
        self.spec = ("matrix-group", p, m, degree)
        self.identity = self.F.identity_matrix(degree)

    def mul(self, g, h):
        return self.F.mat_mul(g, h)

    def inv(self, g):
        return self.F.mat_inv(g)

    def _is_matrix(self, g):
        return (
            isinstance(g, tuple)
            and len(g) == self.degree
            and all(isinstance(r, tuple) and len(r) == self.degree for r in g)
            and all(0 <= x < self.F.q for r in g for x in r)
        )

    def contains(self, g):
        return self._is_matrix(g) and self.F.det(g) != 0

    def elements(self):
        q, d = self.F.q, self.degree
        out = []
        for flat in product(range(q), repeat=d * d):
            g = tuple(tuple(flat[i * d:(i + 1) * d]) for i in range(d))
            if self.contains(g):
                out.append(g)
        out.sort(key=lambda g: (g != self.identity, g))
        return out

    def order(self):
        q, d = self.F.q, self.degree
        n = 1
        for i in range(d):
            n *= q**d - q**i
        return n

    def generators(self):
        F, d = self.F, self.degree
        gens = []
        one = F.identity_matrix(d)
        for i in range(d):
            for j in range(d):
                if i != j:
                    for lam in F.prime_basis():
                        g = [list(r) for r in one]
                        g[i][j] = lam
                        gens.append(tuple(map(tuple, g)))
        if F.q > 2:
            prim = F._exp[1]
            g = [list(r) for r in one]
            g[0][0] = prim
            gens.append(tuple(map(tuple, g)))
        return gens

    def to_json(self, g):
        return [x for r in g for x in r]

    def from_json(self, obj):
        d = self.degree
        if len(obj) != d * d:
            raise ValueError(f"expected {d * d} row-major coefficients")
        return super().from_json(tuple(tuple(obj[i * d:(i + 1) * d]) for i in range(d)))

    def format(self, g):
        return "[" + "; ".join(" ".join(map(str, r)) for r in g) + "]"

    def spec_json(self):
        return {"kind": "matrix-group", "p": self.p, "m": self.m, "degree": self.degree}


class SL2(MatrixGroup):
    def __init__(self, p: int, m: int = 1):
        super().__init__(p, m, 2)
        self.spec = ("sl2", p, m)

    def contains(self, g):
        return self._is_matrix(g) and self.F.det(g) == 1

    def elements(self):
        F = self.F
        out = []
        for a, b, c, d in product(range(F.q), repeat=4):
            if F.sub(F.mul(a, d), F.mul(b, c)) == 1:
                out.append(((a, b), (c, d)))
        out.sort(key=lambda g: (g != self.identity, g))
        return out

    def order(self):
        q = self.F.q
        return q * (q * q - 1)

    def generators(self):
        # elementary transvections over an F_p-basis of the field
        gens = []
        for lam in self.F.prime_basis():
            gens.append(((1, lam), (0, 1)))
            gens.append(((1, 0), (lam, 1)))
        return gens

    def spec_json(self):
        return {"kind": "sl2", "p": self.p, "m": self.m}


# -- permutations ------------------------------------------------------


def transposition(n: int, i: int, j: int):
    """The transposition of 1-based points i and j."""
    return cycle_perm(n, (i, j))


def cycle_perm(n: int, *cycs):
    """Permutation of {1..n} from 1-based cycles, as a 0-based image tuple."""
    img = list(range(n))
    for c in cycs:
        for k, x in enumerate(c):
            img[x - 1] = c[(k + 1) % len(c)] - 1
    return tuple(img)


def cycles(g) -> list[tuple[int, ...]]:
    """Nontrivial cycles of an image tuple, 1-based."""
    seen, out = set(), []
    for i in range(len(g)):
        if i in seen or g[i] == i:
            continue
        c, j = [], i
        while j not in seen:
            seen.add(j)
            c.append(j + 1)
            j = g[j]
        out.append(tuple(c))
    return out


def format_cycles(g) -> str:
    cs = cycles(g)
    return "".join("(" + " ".join(map(str, c)) + ")" for c in cs) if cs else "e"


def parity(g) -> int:
    return sum(len(c) - 1 for c in cycles(g)) % 2


# -- specs -------------------------------------------------------------


def group_from_spec(obj: dict) -> Group:
    """Build a group from its JSON spec, e.g. ``{"kind": "alternating", "n": 6}``."""
    kind = obj.get("kind")
    try:
        if kind == "cyclic":
            return Cyclic(int(obj["n"]))
        if kind == "symmetric":
            return Symmetric(int(obj["n"]))
        if kind == "alternating":
            return Alternating(int(obj["n"]))
        if kind == "free":
            return FreeGroup(int(obj["rank"]), obj.get("names"))
        if kind == "sl2":
            return SL2(int(obj["p"]), int(obj.get("m", 1)))
        if kind == "matrix-group":
            return MatrixGroup(int(obj["p"]), int(obj.get("m", 1)), int(obj.get("degree", 2)))
    except KeyError as exc:
        raise ValueError(f"group spec {obj!r} is missing {exc}") from None
    raise ValueError(f"unknown group kind {kind!r}")


# -- element wrapper and module-level operations ------------------------


@dataclass(frozen=True)
class GElem:
    group: Group
    value: Any

    def __post_init__(self):
        if not self.group.contains(self.value):
            raise ValueError(f"{self.value!r} is not an element of {self.group!r}")

    def __mul__(self, other: "GElem") -> "GElem":
        return mul(self, other)

    def __invert__(self) -> "GElem":
        return inv(self)

    def __pow__(self, n: int) -> "GElem":
        return GElem(self.group, self.group.power(self.value, n))

    def __repr__(self):
        return self.group.format(self.value)


def _same(g: GElem, h: GElem):
    if g.group != h.group:
        raise GroupMismatchError(f"{g.group!r} vs {h.group!r}")


def mul(g: GElem, h: GElem) -> GElem:
    _same(g, h)
    return GElem(g.group, g.group.mul(g.value, h.value))


def inv(g: GElem) -> GElem:
    return GElem(g.group, g.group.inv(g.value))


def conj(g: GElem, h: GElem) -> GElem:
    """g h g^-1"""
    return g * h * ~g


def order_of(g: GElem, bound: int = DEFAULT_ORDER_BOUND) -> int | float:
    """Least k >= 1 with g^k = e; ``math.inf`` for infinite order or past ``bound``."""
    return g.group.element_order(g.value, bound)


def closure(gens: Iterable[GElem], cap: int = 100_000) -> frozenset[GElem]:
    """Subgroup generated by ``gens``, by breadth-first multiplication.

    Raises ``CapExceeded`` once more than ``cap`` elements have been found.
    """
    gens = list(gens)
    if cap < 1:
        raise ValueError("cap must be >= 1")
    if not gens:
        raise ValueError("closure needs at least one generator (pass the identity for {e})")
    G = gens[0].group
    for g in gens[1:]:
        _same(gens[0], g)
    steps = []
    for g in gens:
        steps.append(g.value)
        steps.append(G.inv(g.value))
    seen = {G.identity}
    queue = deque([G.identity])
    while queue:
        x = queue.popleft()
        for s in steps:
            y = G.mul(x, s)
            if y not in seen:
                seen.add(y)
                if len(seen) > cap:
                    raise CapExceeded(cap, len(seen))
                queue.append(y)
    return frozenset(GElem(G, x) for x in seen)


class GroupHom:
    """A homomorphism given by generator images.

    ``source`` is a ``Group``; ``target`` is anything with ``identity``,
    ``mul`` and ``inv`` (a ``Group`` or a ``FreeProduct``).  For finite
    sources the whole Cayley graph is walked once on construction; any
    inconsistent edge means the images violate a relation of the source.
    """

    def __init__(self, source: Group, target, images: dict):
        self.source = source
        self.target = target
        gens = source.generators()
        if set(images) != set(range(len(gens))):
            raise ValueError(f"need images for generators 0..{len(gens) - 1}")
        self.images = dict(images)
        self._table = None
        if source.is_finite:
            self._table = self._walk_cayley_graph(gens)

    def _walk_cayley_graph(self, gens):
        S, T = self.source, self.target
        table = {S.identity: T.identity}
        queue = deque([S.identity])
        while queue:
            x = queue.popleft()
            for i, s in enumerate(gens):
                y = S.mul(x, s)
                fy = T.mul(table[x], self.images[i])
                if y in table:
                    if table[y] != fy:
                        raise ValueError(
                            f"generator images do not respect the relations of {S!r}"
                        )
                else:
                    table[y] = fy
                    queue.append(y)
        return table

    def __call__(self, g):
        return apply_hom(self, g)


def apply_hom(f: GroupHom, g):
    """Image of a source element (raw value or ``GElem``), reduced in the target."""
    if isinstance(g, GElem):
        if g.group != f.source:
            raise GroupMismatchError(f"{g.group!r} is not the source {f.source!r}")
        g = g.value
    if f._table is not None:
        try:
            return f._table[g]
        except KeyError:
            raise ValueError(f"{g!r} is not an element of {f.source!r}") from None
    if isinstance(f.source, FreeGroup):
        if not f.source.contains(g):
            raise ValueError(f"{g!r} is not a reduced word of {f.source!r}")
        T = f.target
        out = T.identity
        for gen, e in g:
            img = f.images[gen]
            if e < 0:
                img, e = T.inv(img), -e
            for _ in range(e):
                out = T.mul(out, img)
        return out
    raise ValueError(f"cannot decompose elements of {f.source!r}")


def identity_hom(G: Group) -> GroupHom:
    return GroupHom(G, G, {i: s for i, s in enumerate(G.generators())})
