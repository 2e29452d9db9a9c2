"""Finite posets, join semilattices with 0, ideals and down-set completions.

Elements are identified by integer indices ``0..n-1``; labels are kept for
reporting only.  Everything here is immutable after construction.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

import numpy as np


class PosetError(ValueError):
    pass


def _closure(n: int, pairs: Iterable[tuple[int, int]]) -> np.ndarray:
    le = np.eye(n, dtype=bool)
    for i, j in pairs:
        le[i, j] = True
    # Warshall, one pivot at a time
    for k in range(n):
        le |= np.outer(le[:, k], le[k, :])
    return le


class Poset:
    """A finite partial order given by ``le`` pairs ``(i, j)`` meaning i <= j.

    With ``relation="cover"`` the pairs are closed transitively; with
    ``"full"`` they must already be transitive (reflexive pairs may be
    left out).  Antisymmetry is checked either way.
    """

    def __init__(self, labels: Iterable, le: Iterable = (), relation: str = "full"):
        self.labels = list(labels)
        n = len(self.labels)
        pairs = [tuple(p) for p in le]
        for i, j in pairs:
            if not (0 <= i < n and 0 <= j < n):
                raise PosetError(f"pair {(i, j)} refers to an element outside 0..{n - 1}")
        if relation not in ("full", "cover"):
            raise PosetError(f"relation must be 'full' or 'cover', not {relation!r}")
        closed = _closure(n, pairs)
        if relation == "full":
            given = np.eye(n, dtype=bool)
            for i, j in pairs:
                given[i, j] = True
            if not np.array_equal(given, closed):
                i, j = map(int, np.argwhere(closed & ~given)[0])
                raise PosetError(
                    f"relation is not transitive: {i} <= {j} is implied but missing"
                )
        both = closed & closed.T & ~np.eye(n, dtype=bool)
        if both.any():
            i, j = map(int, np.argwhere(both)[0])
            raise PosetError(f"relation is not antisymmetric: {i} <= {j} <= {i}")
        self._le = closed
        self._le.setflags(write=False)

    def __len__(self):
        return len(self.labels)

    def __repr__(self):
        return f"Poset({self.labels}, {len(self.pairs())} strict pairs)"

    def __eq__(self, other):
        return isinstance(other, Poset) and np.array_equal(self._le, other._le)

    def __hash__(self):
        return hash(self._le.tobytes())

    @property
    def n(self) -> int:
        return len(self.labels)

    def leq(self, i: int, j: int) -> bool:
        return bool(self._le[i, j])

    def lt(self, i: int, j: int) -> bool:
        return i != j and bool(self._le[i, j])

    def matrix(self) -> np.ndarray:
        return self._le

    def pairs(self) -> list[tuple[int, int]]:
        """Strict relations i < j."""
        return [(int(i), int(j)) for i, j in np.argwhere(self._le) if i != j]

    def below(self, i: int) -> frozenset:
        return frozenset(int(k) for k in np.flatnonzero(self._le[:, i]))

    def above(self, i: int) -> frozenset:
        return frozenset(int(k) for k in np.flatnonzero(self._le[i, :]))

    def upper_bounds(self, subset) -> set:
        subset = list(subset)
        if not subset:
            return set(range(self.n))
        mask = np.logical_and.reduce([self._le[s, :] for s in subset])
        return {int(k) for k in np.flatnonzero(mask)}

    def least(self, subset):
        """Least element of ``subset`` or None."""
        subset = list(subset)
        for x in subset:
            if all(self._le[x, y] for y in subset):
                return x
        return None

    def supremum(self, subset):
        return self.least(self.upper_bounds(subset))

    def linear_extension(self) -> list[int]:
        """Indices sorted so that i < j in the order implies i comes first."""
        return sorted(range(self.n), key=lambda i: (int(self._le[:, i].sum()), i))

    def is_down_set(self, members) -> bool:
        members = set(members)
        return all(self.below(j) <= members for j in members)

    def down_closure(self, members) -> frozenset:
        out = set()
        for j in members:
            out |= self.below(j)
        return frozenset(out)

    def down_sets(self) -> list[frozenset]:
        """All downward-closed subsets, smallest first."""
        order = self.linear_extension()
        out = []

        def rec(k, chosen):
            if k == len(order):
                out.append(frozenset(chosen))
                return
            i = order[k]
            rec(k + 1, chosen)
            if self.below(i) - {i} <= chosen:
                chosen.add(i)
                rec(k + 1, chosen)
                chosen.discard(i)

        rec(0, set())
        return sorted(out, key=lambda s: (len(s), sorted(s)))

    def covers(self) -> list[tuple[int, int]]:
        out = []
        for i, j in self.pairs():
            if not any(self.lt(i, k) and self.lt(k, j) for k in range(self.n)):
                out.append((i, j))
        return out

    # -- JSON ------------------------------------------------------------

    def to_json(self) -> dict:
        return {"elements": self.labels, "le": [list(p) for p in self.covers()], "relation": "cover"}

    @classmethod
    def from_json(cls, obj) -> "Poset":
        if isinstance(obj, str):
            obj = json.loads(obj)
        if not isinstance(obj, dict) or "elements" not in obj:
            raise PosetError('poset JSON needs an "elements" list')
        return cls(obj["elements"], obj.get("le", []), obj.get("relation", "full"))

    @classmethod
    def load(cls, path) -> "Poset":
        with open(path) as fh:
            text = fh.read()
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise PosetError(f"{path}: malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
        return cls.from_json(obj)


# -- small standard posets ---------------------------------------------------


def chain(n: int, labels=None) -> Poset:
    labels = labels or [str(i) for i in range(n)]
    return Poset(labels, [(i, i + 1) for i in range(n - 1)], "cover")


def antichain(n: int, labels=None) -> Poset:
    return Poset(labels or [str(i) for i in range(n)], [], "cover")


def diamond() -> Poset:
    """0 < a, b < t with a and b incomparable."""
    return Poset(["0", "a", "b", "t"], [(0, 1), (0, 2), (1, 3), (2, 3)], "cover")


def boolean_lattice(k: int) -> Poset:
    n = 1 << k
    pairs = [(i, i | (1 << b)) for i in range(n) for b in range(k) if not i & (1 << b)]
    labels = ["{" + ",".join(str(b) for b in range(k) if i >> b & 1) + "}" for i in range(n)]
    return Poset(labels, pairs, "cover")


def random_poset(rng, n: int, density: float = 0.35) -> Poset:
    """Random order on n points: a random DAG on a shuffled line, closed."""
    perm = list(range(n))
    rng.shuffle(perm)
    pairs = [(perm[i], perm[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < density]
    return Poset([str(i) for i in range(n)], pairs, "cover")


# -- join semilattices ---------------------------------------------------------


class JoinSemilattice:
    """A finite join semilattice with 0, with a precomputed join table."""

    def __init__(self, poset: Poset):
        n = poset.n
        if n == 0:
            raise PosetError("a join semilattice with 0 needs at least one element")
        zero = poset.least(range(n))
        if zero is None:
            raise PosetError("poset has no least element")
        table = [[0] * n for _ in range(n)]
        for a in range(n):
            for b in range(a, n):
                s = poset.supremum((a, b))
                if s is None:
                    raise PosetError(
                        f"{poset.labels[a]!r} and {poset.labels[b]!r} have no least upper bound"
                    )
                table[a][b] = table[b][a] = s
        self.poset = poset
        self.zero = zero
        self.table = tuple(tuple(r) for r in table)

    def __repr__(self):
        return f"JoinSemilattice({self.poset.labels})"

    @property
    def n(self) -> int:
        return self.poset.n

    @property
    def labels(self):
        return self.poset.labels

    def _check(self, a):
        if not (isinstance(a, (int, np.integer)) and 0 <= a < self.n):
            raise IndexError(f"element index {a!r} out of range 0..{self.n - 1}")

    def join(self, a: int, b: int) -> int:
        self._check(a)
        self._check(b)
        return self.table[a][b]

    def join_all(self, items: Iterable[int]) -> int:
        out = self.zero
        for x in items:
            out = self.table[out][x]
        return out

    def leq(self, a: int, b: int) -> bool:
        return self.poset.leq(a, b)

    def index(self, label) -> int:
        return self.poset.labels.index(label)

    def ideals(self) -> list["DownSet"]:
        """All ideals (nonempty down-sets closed under join), smallest first."""
        out = []
        for d in self.poset.down_sets():
            if d and all(self.table[a][b] in d for a in d for b in d):
                out.append(DownSet(self.poset, d))
        return out


def join(sl: JoinSemilattice, a: int, b: int) -> int:
    return sl.join(a, b)


@dataclass(frozen=True)
class DownSet:
    poset: Poset
    members: frozenset

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(self.members))
        if not self.poset.is_down_set(self.members):
            raise PosetError(f"{sorted(self.members)} is not downward closed")

    def __contains__(self, x):
        return x in self.members

    def __le__(self, other: "DownSet"):
        return self.members <= other.members

    def __lt__(self, other: "DownSet"):
        return self.members < other.members

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(sorted(self.members))

    def labels(self) -> list:
        return [self.poset.labels[i] for i in sorted(self.members)]

    def __repr__(self):
        return "{" + ", ".join(map(str, self.labels())) + "}"


def ideal_generated(sl: JoinSemilattice, seed: Iterable[int]) -> DownSet:
    """Smallest ideal containing ``seed``; the empty seed gives {0}."""
    seed = set(seed)
    for a in seed:
        sl._check(a)
    # the join of the seed bounds everything; the ideal is its down-set
    top = sl.join_all(seed)
    return DownSet(sl.poset, sl.poset.below(top))


# -- finite lattices and the completion ---------------------------------------


class FiniteLattice:
    """A finite lattice given by element labels and an order matrix."""

    def __init__(self, elements: list, le):
        self.elements = list(elements)
        n = len(self.elements)
        self.le = np.asarray(le, dtype=bool)
        order = Poset(range(n), [(int(i), int(j)) for i, j in np.argwhere(self.le)], "full")
        self._poset = order
        join = [[0] * n for _ in range(n)]
        meet = [[0] * n for _ in range(n)]
        for a in range(n):
            for b in range(n):
                s = order.supremum((a, b))
                lower = [x for x in range(n) if self.le[x, a] and self.le[x, b]]
                m = next((x for x in lower if all(self.le[y, x] for y in lower)), None)
                if s is None or m is None:
                    raise PosetError("not a lattice")
                join[a][b], meet[a][b] = s, m
        self.join = tuple(map(tuple, join))
        self.meet = tuple(map(tuple, meet))

    def __len__(self):
        return len(self.elements)

    @property
    def bottom(self) -> int:
        return self._poset.least(range(len(self)))

    @property
    def top(self) -> int:
        n = len(self)
        return next(x for x in range(n) if all(self.le[y, x] for y in range(n)))

    def index(self, element) -> int:
        return self.elements.index(element)

    def check_axioms(self) -> list[str]:
        """Violations of the lattice laws over all pairs and triples (empty if none)."""
        n, J, M = len(self), self.join, self.meet
        bad = []
        for a in range(n):
            if J[a][a] != a or M[a][a] != a:
                bad.append(f"idempotence at {a}")
            for b in range(n):
                if J[a][b] != J[b][a] or M[a][b] != M[b][a]:
                    bad.append(f"commutativity at {a},{b}")
                if J[a][M[a][b]] != a or M[a][J[a][b]] != a:
                    bad.append(f"absorption at {a},{b}")
                for c in range(n):
                    if J[J[a][b]][c] != J[a][J[b][c]] or M[M[a][b]][c] != M[a][M[b][c]]:
                        bad.append(f"associativity at {a},{b},{c}")
        return bad

    def to_json(self) -> dict:
        n = len(self)
        return {
            "size": n,
            "elements": [sorted(e) if isinstance(e, frozenset) else e for e in self.elements],
            "le": [[a, b] for a in range(n) for b in range(n) if a != b and self.le[a, b]],
            "join": [list(r) for r in self.join],
            "meet": [list(r) for r in self.meet],
        }


def completion(p: Poset) -> FiniteLattice:
    """Lattice of all down-sets of ``p`` under inclusion.

    Elements are frozensets of indices; meet is intersection and join is
    union, which the generic table construction reproduces.
    """
    sets = p.down_sets()
    n = len(sets)
    le = np.zeros((n, n), dtype=bool)
    for i, s in enumerate(sets):
        for j, t in enumerate(sets):
            le[i, j] = s <= t
    return FiniteLattice(sets, le)


def ideal_lattice(sl: JoinSemilattice) -> FiniteLattice:
    ideals = [d.members for d in sl.ideals()]
    n = len(ideals)
    le = [[ideals[i] <= ideals[j] for j in range(n)] for i in range(n)]
    return FiniteLattice(ideals, le)


def is_compact(lat: FiniteLattice, a: int) -> bool:
    """In a finite lattice every join is a finite join, so every element is compact."""
    if not 0 <= a < len(lat):
        raise IndexError(f"element index {a} out of range")
    return True


# -- sup-dense embeddings -------------------------------------------------------


class NotSupDense(PosetError):
    def __init__(self, element: int, label):
        super().__init__(f"element {label!r} is not the supremum of the dense elements below it")
        self.element = element


def phi_embedding(p: Poset, dense: Iterable[int]) -> dict[int, frozenset]:
    """phi(i) = {j in dense | j <= i}, after checking that ``dense`` is sup-dense."""
    dense = sorted(set(dense))
    phi = {}
    for i in range(p.n):
        below = frozenset(j for j in dense if p.leq(j, i))
        if p.supremum(below) != i:
            raise NotSupDense(i, p.labels[i])
        phi[i] = below
    return phi


def minimal_dense(p: Poset) -> list[int]:
    """Elements that are not the supremum of the elements strictly below them.

    This set is contained in every sup-dense subset and is itself sup-dense.
    """
    return [i for i in range(p.n) if p.supremum(p.below(i) - {i}) != i]
