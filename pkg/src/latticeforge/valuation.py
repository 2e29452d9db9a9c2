"""Valuations on free products with values in a finite join semilattice.

A valuation d satisfies d(e) = 0, d(x^-1) = d(x) and d(xy) <= d(x) v d(y).
The classes here build such maps layer by layer:

* ``BaseValuation``: one copy of a group per semilattice element; a word
  is sent to the join of the positions of its letters.
* ``FreeZeroExtension``: add a factor whose letters count as 0.
* ``Step1Extension``: add two factors K1, K2 and make a chosen element
  g0 "conjugation-generate" everything of lower level (see ``witness``).
* ``IteratedExtension``: a stack of Step1 layers over length-lex
  enumerated elements, the finite stand-in for a well-ordered induction.

``realize_lattice`` puts these together into a ``RealizedLattice``: the
subgroups {x : d(x) in J} for ideals J are then the intermediate subgroups
between the level-zero subgroup and the whole group.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .freeprod import FreeProduct, Word
from .groups import Group
from .order import JoinSemilattice


class Valuation:
    """Common evaluation interface with a per-instance memo."""

    sl: JoinSemilattice
    spec: FreeProduct

    def __init__(self):
        self._memo: dict = {}

    def eval(self, x: Word) -> int:
        v = self._memo.get(x)
        if v is None:
            for f, _ in x:
                if f >= self.spec.rank:
                    raise ValueError(f"letter in factor {f} is outside {self.spec.rank} factors")
            v = self._eval(x)
            self._memo[x] = v
        return v

    __call__ = eval

    def _eval(self, x: Word) -> int:
        raise NotImplementedError

    def leq(self, a: int, b: int) -> bool:
        return self.sl.leq(a, b)

    def level_member(self, x: Word, b: int) -> bool:
        """x in the level subgroup {d <= b}."""
        return self.sl.leq(self.eval(x), b)

    def join_over_runs(self, x: Word, width: int, inner: "Valuation") -> int:
        """Join of ``inner`` over the maximal runs of letters from factors < width."""
        table = self.sl.table
        out = self.sl.zero
        start = None
        for i, (f, _) in enumerate(x):
            if f < width:
                if start is None:
                    start = i
            elif start is not None:
                out = table[out][inner.eval(x[start:i])]
                start = None
        if start is not None:
            out = table[out][inner.eval(x[start:])]
        return out


class BaseValuation(Valuation):
    """Join of letter positions on the free product of copies of ``group``."""

    def __init__(self, sl: JoinSemilattice, group: Group, names=None):
        super().__init__()
        if group.is_finite and group.order() < 2:
            raise ValueError("the factor group must be nontrivial")
        self.sl = sl
        self.group = group
        self.positions = list(range(sl.n))
        if names is None:
            names = [f"x{sl.labels[i]}" if len(group.generators()) == 1 else None for i in range(sl.n)]
            names = None if None in names else names
        self.spec = FreeProduct([group] * sl.n, names)

    def _eval(self, x):
        table = self.sl.table
        out = self.sl.zero
        for f, _ in x:
            out = table[out][self.positions[f]]
        return out

    def letter_of_value(self, c: int) -> Word:
        """A one-letter word of value c (first nontrivial element of factor c)."""
        g = next(v for v in self.group.elements() if v != self.group.identity) if self.group.is_finite \
            else self.group.generators()[0]
        return ((c, g),)


def base_valuation(sl: JoinSemilattice, group: Group) -> BaseValuation:
    return BaseValuation(sl, group)


class FreeZeroExtension(Valuation):
    """d * 0 on G * K: the join of d over the maximal runs of G-letters."""

    def __init__(self, inner: Valuation, K: Group):
        super().__init__()
        self.inner = inner
        self.sl = inner.sl
        self.width = inner.spec.rank
        self.spec = inner.spec.extend([K])

    def _eval(self, x):
        return self.join_over_runs(x, self.width, self.inner)


def free_zero_extension(v: Valuation, K: Group) -> FreeZeroExtension:
    return FreeZeroExtension(v, K)


def _first_nontrivial(G: Group):
    if G.is_finite:
        for g in G.elements():
            if g != G.identity:
                return g
        raise ValueError(f"{G!r} is trivial")
    return G.generators()[0]


@dataclass(frozen=True)
class Letter:
    """One letter of an alternating L1/L2/L3 factorization.

    ``word`` is the letter as an element of the ambient group; ``core`` is
    s for L1, the G1-element for L2 and the K2-letter for L3.
    """

    kind: str
    word: Word
    core: Word


class Step1Extension(Valuation):
    """The one-step extension to G * K1 * K2 around the element ``g0``.

    Factors ``n`` (K1) and ``n + 1`` (K2) are appended, where n is the
    number of factors of the inner valuation.  With a = d(g0), letters are

    * L1: s in S = G * K1, s != e, d'(s) != a   (d' = d * 0 on S)
    * L2: k2 g k2^-1 for g != e in G1 = k1 {d <= a} k1^-1
    * L3: h1 z h1^-1 for z != e in K2, where h1 = g0 k1 g0^-1

    A word that is an alternating product of such letters gets the join of
    d' over its L1 letters; any other word gets a v d'(s_0) v ... v d'(s_m)
    over the S-segments of its S * K2 normal form.  When g0 = e or a = 0
    the layer is plain d * 0 * 0.
    """

    def __init__(self, inner: Valuation, g0: Word, K1: Group, K2: Group, names=None):
        super().__init__()
        self.inner = inner
        self.sl = inner.sl
        self.n = n = inner.spec.rank
        self.spec = inner.spec.extend([K1, K2], names)
        inner.spec.check(g0)
        self.g0 = g0
        self.K1, self.K2 = K1, K2
        self.a = inner.eval(g0)
        self.degenerate = (not g0) or self.a == self.sl.zero
        sp = self.spec
        self.k1 = ((n, _first_nontrivial(K1)),)
        self.k2 = ((n + 1, _first_nontrivial(K2)),)
        self.k1_inv = sp.inv(self.k1)
        self.k2_inv = sp.inv(self.k2)
        self.h1 = sp.conjugate(g0, self.k1)
        self.h1_inv = sp.inv(self.h1)
        self._dprime: dict = {}

    # -- pieces ----------------------------------------------------------

    def dprime(self, s: Word) -> int:
        """d * 0 on S = G * K1."""
        v = self._dprime.get(s)
        if v is None:
            v = self.join_over_runs(s, self.n, self.inner)
            self._dprime[s] = v
        return v

    def in_G1(self, gamma: Word) -> bool:
        """gamma in G1 = k1 {g in G : d(g) <= a} k1^-1."""
        if not gamma:
            return True
        g = self.spec.mul_many(self.k1_inv, gamma, self.k1)
        if any(f >= self.n for f, _ in g):
            return False
        return self.sl.leq(self.inner.eval(g), self.a)

    def split_k2(self, x: Word) -> tuple[list[Word], list]:
        """S * K2 normal form: segments s_0..s_m and K2 letters z_1..z_m."""
        f2 = self.n + 1
        segs, zs, start = [], [], 0
        for i, (f, v) in enumerate(x):
            if f == f2:
                segs.append(x[start:i])
                zs.append((f, v))
                start = i + 1
        segs.append(x[start:])
        return segs, zs

    # -- factorization ---------------------------------------------------

    def _segment(self, sigma: Word, left, right):
        """L1 content of a segment between neighbours ``left``/``right``.

        Returns [] (nothing), [Letter] (one L1 letter) or None (impossible).
        """
        sp = self.spec
        s = sigma
        if left == "mid":
            s = sp.mul(self.h1, s)
        if right == "mid":
            s = sp.mul(s, self.h1_inv)
        if not s:
            if (left, right) in (("close", "open"), ("mid", "mid")):
                return None
            return []
        if self.dprime(s) == self.a:
            return None
        return [Letter("L1", s, s)]

    def factorizations(self, x: Word) -> Iterator[list[Letter]]:
        """All alternating L1/L2/L3 factorizations of x (at most one exists)."""
        if self.degenerate:
            raise ValueError("degenerate layer (g0 = e or d(g0) = 0) has no letter classes")
        sp = self.spec
        segs, zs = self.split_k2(x)
        m = len(zs)
        k2, k2i = self.k2[0], self.k2_inv[0]

        def rec(j, left):
            if j == m:
                piece = self._segment(segs[j], left, None)
                if piece is not None:
                    yield piece
                return
            piece = self._segment(segs[j], left, "mid")
            if piece is not None:
                z = (zs[j],)
                l3 = Letter("L3", sp.mul_many(self.h1, z, self.h1_inv), z)
                for rest in rec(j + 1, "mid"):
                    yield piece + [l3] + rest
            if j + 1 < m and zs[j] == k2 and zs[j + 1] == k2i and segs[j + 1] and self.in_G1(segs[j + 1]):
                piece = self._segment(segs[j], left, "open")
                if piece is not None:
                    gamma = segs[j + 1]
                    l2 = Letter("L2", sp.mul_many(self.k2, gamma, self.k2_inv), gamma)
                    for rest in rec(j + 2, "close"):
                        yield piece + [l2] + rest

        yield from rec(0, None)

    def l123_factorize(self, x: Word):
        """The alternating L1/L2/L3 factorization of x, or None."""
        return next(self.factorizations(x), None)

    def delta_fallback(self, x: Word) -> int:
        """a v d'(s_0) v ... v d'(s_m) over the S * K2 segments (e maps to 0)."""
        if not x:
            return self.sl.zero
        segs, _ = self.split_k2(x)
        table = self.sl.table
        out = self.a
        for s in segs:
            if s:
                out = table[out][self.dprime(s)]
        return out

    def _eval(self, x):
        n = self.n
        if all(f < n for f, _ in x):
            return self.inner.eval(x)
        if self.degenerate:
            return self.join_over_runs(x, n, self.inner)
        fac = self.l123_factorize(x)
        if fac is None:
            return self.delta_fallback(x)
        table = self.sl.table
        out = self.sl.zero
        for letter in fac:
            if letter.kind == "L1":
                out = table[out][self.dprime(letter.core)]
        return out

    # -- witnesses -------------------------------------------------------

    def witness(self, h: Word) -> list[tuple[str, Word]]:
        """Write h (in G, with d(h) <= a) as a product of factors from
        L = {d1 = 0} and g0 L g0^-1, tagged ``"L"`` or ``"gLg^-1"``.

        The chain: h = k1^-1 (k1 h k1^-1) k1 with k1 h k1^-1 in G1;
        G1 is conjugated into L by k2; k2 = h1^-1 (h1 k2 h1^-1) h1 with
        the middle factor in L; and h1 = g0 k1 g0^-1 lies in g0 L g0^-1.
        """
        sp = self.spec
        if any(f >= self.n for f, _ in h):
            raise ValueError("h must lie in the inner group")
        if not h:
            return []
        if self.inner.eval(h) == self.sl.zero:
            return [("L", h)]
        if self.degenerate or not self.sl.leq(self.inner.eval(h), self.a):
            raise ValueError("h is not below g0 in this layer")
        gamma = sp.mul_many(self.k1, h, self.k1_inv)
        m2 = sp.mul_many(self.k2, gamma, self.k2_inv)
        m3 = sp.mul_many(self.h1, self.k2, self.h1_inv)
        return [
            ("L", self.k1_inv),
            ("gLg^-1", self.h1_inv),
            ("L", sp.inv(m3)),
            ("gLg^-1", self.h1),
            ("L", m2),
            ("gLg^-1", self.h1_inv),
            ("L", m3),
            ("gLg^-1", self.h1),
            ("L", self.k1),
        ]


def step1_extension(v: Valuation, g0: Word, K1: Group, K2: Group) -> Step1Extension:
    return Step1Extension(v, g0, K1, K2)


class IteratedExtension(Valuation):
    """A stack of Step1 layers; evaluation is the top layer's."""

    def __init__(self, base: Valuation, layers: Sequence[Step1Extension]):
        super().__init__()
        self.base = base
        self.layers = list(layers)
        top = self.layers[-1] if self.layers else base
        self.top = top
        self.sl = base.sl
        self.spec = top.spec

    def _eval(self, x):
        return self.top.eval(x)

    def layer_for(self, g: Word):
        for layer in self.layers:
            if layer.g0 == g:
                return layer
        return None


def step2_extension(
    v: Valuation,
    group: Group,
    element_budget: int,
    rounds: int = 1,
    skip_level_zero: bool = False,
) -> IteratedExtension:
    """Iterate Step1 layers with K1 = K2 = ``group``.

    Each round enumerates the ambient group at the start of the round in
    length-lex order and adds a layer for each of the first
    ``element_budget`` elements not yet processed (optionally skipping
    elements of value 0, whose layers are plain free extensions).
    """
    if element_budget < 1 or rounds < 1:
        raise ValueError("element_budget and rounds must be positive")
    base = v
    layers: list[Step1Extension] = []
    current = v
    done = set()
    for _ in range(rounds):
        ambient = current.spec.with_alphabets(_alphabets_for(current.spec, group))
        chosen = []
        for x in _length_lex(ambient):
            if x in done:
                continue
            if skip_level_zero and current.eval(x) == current.sl.zero:
                continue
            chosen.append(x)
            if len(chosen) == element_budget:
                break
        for g in chosen:
            current = Step1Extension(current, g, group, group)
            layers.append(current)
            done.add(g)
    return IteratedExtension(base, layers)


def _alphabets_for(spec: FreeProduct, group: Group) -> dict:
    if group.is_finite:
        return {}
    gens = group.generators()
    letters = []
    for g in gens:
        letters += [g, group.inv(g)]
    return {f: letters for f in range(spec.rank) if not spec.factors[f].is_finite}


def _length_lex(spec: FreeProduct) -> Iterator[Word]:
    L = 0
    while True:
        for x in spec.ball(L):
            if len(x) == L:
                yield x
        L += 1
        if L > 64:
            return


# -- realization -------------------------------------------------------------


class NotCovered(LookupError):
    pass


@dataclass
class RealizedLattice:
    """A valuation on a free product whose ideal sets give intermediate subgroups.

    ``L`` is the level-zero subgroup {d = 0}; for an ideal J the subgroup
    K(J) = {x : d(x) in J}.  ``trace`` records the construction budgets and
    the processed elements.
    """

    sl: JoinSemilattice
    group: Group
    base: BaseValuation
    valuation: IteratedExtension
    trace: dict = field(default_factory=dict)

    @property
    def spec(self) -> FreeProduct:
        return self.valuation.spec

    def delta(self, x: Word) -> int:
        return self.valuation.eval(x)

    def in_L(self, x: Word) -> bool:
        return self.delta(x) == self.sl.zero

    def in_K(self, ideal, x: Word) -> bool:
        return self.delta(x) in ideal

    def ideals(self):
        return self.sl.ideals()

    def processed(self) -> list[Word]:
        return [layer.g0 for layer in self.valuation.layers]

    def ball(self, L: int) -> Iterator[Word]:
        return self.spec.with_alphabets(_alphabets_for(self.spec, self.group)).ball(L)

    def witness_join_membership(self, h: Word, g: Word) -> list[tuple[str, Word]]:
        """Factors from L and gLg^-1 whose product is h (requires d(h) <= d(g)).

        Raises ``NotCovered`` when no layer was built for g, or when h uses
        factors added after that layer.
        """
        sp = self.spec
        sp.check(h)
        sp.check(g)
        if not h:
            return []
        dh, dg = self.delta(h), self.delta(g)
        if not self.sl.leq(dh, dg):
            raise ValueError("witness requires d(h) <= d(g)")
        if dh == self.sl.zero:
            return [("L", h)]
        layer = self.valuation.layer_for(g)
        if layer is None:
            raise NotCovered("no layer was built for g within the budget")
        if any(f >= layer.n for f, _ in h):
            raise NotCovered("h uses factors added after the layer for g")
        return layer.witness(h)

    def check_witness(self, witness, h: Word, g: Word) -> list[str]:
        """Problems with a witness (empty when it is valid)."""
        sp = self.spec
        problems = []
        prod = sp.mul_many(*(w for _, w in witness))
        if prod != h:
            problems.append("factors do not multiply out to h")
        gi = sp.inv(g)
        for tag, y in witness:
            if tag == "L":
                if not self.in_L(y):
                    problems.append(f"L-factor {sp.format(y)} has nonzero value")
            elif tag == "gLg^-1":
                if not self.in_L(sp.mul_many(gi, y, g)):
                    problems.append(f"g^-1 y g for {sp.format(y)} has nonzero value")
            else:
                problems.append(f"unknown tag {tag!r}")
        return problems


def surjectivity_pair(rl: RealizedLattice, a: int, b: int) -> tuple[Word, Word]:
    """Words g, h in the base group with d(g) = a, d(h) = b, d(gh) = a v b."""
    base = rl.base
    zero = rl.sl.zero
    if a == b == zero:
        return (), ()
    if a == b:
        g = base.letter_of_value(a)
        k = base.letter_of_value(zero)
        return g, rl.spec.mul(k, g)
    return (base.letter_of_value(a) if a != zero else ()), (base.letter_of_value(b) if b != zero else ())


def realize_lattice(
    sl: JoinSemilattice,
    group: Group,
    element_budget: int | None = None,
    rounds: int = 1,
    skip_level_zero: bool = True,
) -> RealizedLattice:
    """Base valuation on copies of ``group`` indexed by ``sl``, then Step1 layers.

    By default one round processes every one-letter word of nonzero value,
    so each nonzero level has a layer built around one of its letters.
    """
    base = BaseValuation(sl, group)
    nonzero = sum(1 for c in range(sl.n) if c != sl.zero)
    if element_budget is None:
        per = (group.order() - 1) if group.is_finite else 2 * len(group.generators())
        element_budget = nonzero * per
    if nonzero == 0:
        val = IteratedExtension(base, [])
    else:
        val = step2_extension(base, group, element_budget, rounds, skip_level_zero)
    trace = {
        "element_budget": element_budget,
        "rounds": rounds,
        "skip_level_zero": skip_level_zero,
        "factors": val.spec.rank,
        "processed": [val.spec.format(layer.g0) for layer in val.layers],
    }
    return RealizedLattice(sl, group, base, val, trace)


# -- verification sweeps ------------------------------------------------------


@dataclass
class CorrespondenceReport:
    failures: list = field(default_factory=list)
    witnessed: int = 0
    not_covered: int = 0
    ideal_of: dict = field(default_factory=dict)
    gadget_pairs: int = 0

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_intermediate_correspondence(rl: RealizedLattice, L: int = 3, h_radius: int | None = None) -> CorrespondenceReport:
    """Ball-level checks of the ideal/subgroup correspondence.

    For each g in the radius-L ball: the ideal generated by d(g) is
    recorded; every h in the radius-``h_radius`` ball with d(h) <= d(g) is
    witnessed in L v gLg^-1 when a layer for g exists; and the join gadget
    pairs are checked for every pair of semilattice elements.
    """
    sl = rl.sl
    h_radius = L if h_radius is None else h_radius
    rep = CorrespondenceReport()
    hs = list(rl.ball(h_radius))
    for g in rl.ball(L):
        dg = rl.delta(g)
        rep.ideal_of[g] = frozenset(sl.poset.below(dg))
        for h in hs:
            if not sl.leq(rl.delta(h), dg):
                continue
            try:
                w = rl.witness_join_membership(h, g)
            except NotCovered:
                rep.not_covered += 1
                continue
            problems = rl.check_witness(w, h, g)
            if problems:
                rep.failures.append({"g": rl.spec.to_json(g), "h": rl.spec.to_json(h), "problems": problems})
            else:
                rep.witnessed += 1
    for a in range(sl.n):
        for b in range(sl.n):
            g, h = surjectivity_pair(rl, a, b)
            rep.gadget_pairs += 1
            got = (rl.delta(g), rl.delta(h), rl.delta(rl.spec.mul(g, h)))
            if got != (a, b, sl.join(a, b)):
                rep.failures.append({"gadget": [a, b], "values": list(got)})
    return rep


def containment_matrices(rl: RealizedLattice, L: int):
    """(ideal inclusion matrix, K(J)-ball containment matrix) over all ideals."""
    ideals = [set(d.members) for d in rl.ideals()]
    ball = list(rl.ball(L))
    values = [rl.delta(x) for x in ball]
    members = [frozenset(i for i, v in enumerate(values) if v in J) for J in ideals]
    n = len(ideals)
    inc = [[ideals[i] <= ideals[j] for j in range(n)] for i in range(n)]
    cont = [[members[i] <= members[j] for j in range(n)] for i in range(n)]
    return inc, cont


def valuation_axiom_failures(v: Valuation, spec: FreeProduct, total: int, limit: int = 20) -> tuple[list, int]:
    """Check d(e) = 0, d(x^-1) = d(x), d(xy) <= d(x) v d(y) for |x| + |y| <= total.

    Returns (counterexamples, number of pairs checked).
    """
    sl = v.sl
    table = sl.table
    le = sl.poset.matrix()
    bad = []
    if v.eval(()) != sl.zero:
        bad.append(("identity", ()))
    by_len: dict[int, list] = {}
    for x in spec.ball(total):
        by_len.setdefault(len(x), []).append(x)
    vals = {}
    for xs in by_len.values():
        for x in xs:
            dx = v.eval(x)
            vals[x] = dx
            if v.eval(spec.inv(x)) != dx and len(bad) < limit:
                bad.append(("inverse", x))
    checked = 0
    mul = spec.mul
    ev = v.eval
    for lx in range(total + 1):
        for x in by_len.get(lx, ()):
            dx = vals[x]
            row = table[dx]
            for ly in range(total - lx + 1):
                for y in by_len.get(ly, ()):
                    checked += 1
                    if not le[ev(mul(x, y)), row[vals[y]]]:
                        if len(bad) < limit:
                            bad.append(("subadditivity", x, y))
    return bad, checked
