"""Reduced words in free products of factor groups.

A word is a plain tuple of letters ``(factor_index, value)``.  The
``FreeProduct`` object owns the factor groups and does all arithmetic;
words produced by its methods are always reduced (no identity letters,
neighbouring letters from distinct factors).  Word length means the
number of letters (syllables).
"""

from __future__ import annotations

import math
import re
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .groups import Group, group_from_spec

Word = tuple


class NotReducedError(ValueError):
    pass


class FreeProduct:
    """Free product of ``factors`` (a list of ``Group`` objects).

    ``names`` labels the generators of every factor in order, for parsing
    and printing.  ``alphabets`` maps a factor index to the letters used
    when enumerating balls; finite factors default to all non-identity
    elements, infinite ones must be given explicitly.
    """

    identity: Word = ()

    def __init__(self, factors: Sequence[Group], names=None, alphabets=None):
        if not factors:
            raise ValueError("a free product needs at least one factor")
        self.factors = list(factors)
        self._alphabets = dict(alphabets or {})
        self._symbols = {}
        self._gen_of_factor = [[] for _ in self.factors]
        names = list(names) if names is not None else None
        k = 0
        for i, G in enumerate(self.factors):
            gens = G.generators()
            for j, g in enumerate(gens):
                if names is not None:
                    if k >= len(names):
                        raise ValueError("not enough generator names")
                    name = names[k]
                elif len(gens) == 1:
                    name = f"x{i}"
                else:
                    name = f"x{i}_{j}"
                k += 1
                self._symbols[name] = (i, g)
                self._gen_of_factor[i].append(name)
        if names is not None and k != len(names):
            raise ValueError(f"expected {k} generator names, got {len(names)}")
        self.names = list(self._symbols)
        self._letter_index = {}

    def __repr__(self):
        return " * ".join(repr(G) for G in self.factors)

    def __eq__(self, other):
        return isinstance(other, FreeProduct) and self.factors == other.factors

    def __hash__(self):
        return hash(tuple(self.factors))

    @property
    def rank(self) -> int:
        return len(self.factors)

    def extend(self, factors: Sequence[Group], names=None) -> "FreeProduct":
        """This product with extra factors appended; old words stay valid.

        Existing generator names are kept; new ones come from ``names`` or
        default to ``x<factor>``.
        """
        fp = FreeProduct(self.factors + list(factors), None, self._alphabets)
        symbols = dict(self._symbols)
        gen_of = [list(x) for x in self._gen_of_factor]
        new_names = iter(names) if names is not None else None
        for i in range(self.rank, fp.rank):
            gen_of.append([])
            for nm in fp._gen_of_factor[i]:
                label = next(new_names) if new_names is not None else nm
                symbols[label] = fp._symbols[nm]
                gen_of[i].append(label)
        fp._symbols, fp._gen_of_factor, fp.names = symbols, gen_of, list(symbols)
        return fp

    # -- letters and validation ----------------------------------------

    def letter(self, factor: int, value) -> Word:
        """The one-letter word for ``value`` in ``factor`` (e if trivial)."""
        G = self.factors[factor]
        if not G.contains(value):
            raise ValueError(f"{value!r} is not in factor {factor} ({G!r})")
        return () if value == G.identity else ((factor, value),)

    def generator(self, name: str) -> Word:
        i, g = self._symbols[name]
        return self.letter(i, g)

    def contains(self, x) -> bool:
        if not isinstance(x, tuple):
            return False
        prev = None
        for letter in x:
            if len(letter) != 2:
                return False
            f, v = letter
            if not (isinstance(f, int) and 0 <= f < self.rank) or f == prev:
                return False
            G = self.factors[f]
            if not G.contains(v) or v == G.identity:
                return False
            prev = f
        return True

    def check(self, x) -> Word:
        if not self.contains(x):
            raise NotReducedError(f"{x!r} is not a reduced word of {self!r}")
        return x

    # -- arithmetic ----------------------------------------------------

    def reduce(self, raw: Iterable) -> Word:
        """Normal form of a sequence of letters, merging and cancelling."""
        stack = []
        for f, v in raw:
            if not (0 <= f < self.rank):
                raise ValueError(f"factor index {f} out of range")
            G = self.factors[f]
            if not G.contains(v):
                raise ValueError(f"{v!r} is not in factor {f} ({G!r})")
            if v == G.identity:
                continue
            if stack and stack[-1][0] == f:
                m = G.mul(stack.pop()[1], v)
                if m != G.identity:
                    stack.append((f, m))
            else:
                stack.append((f, v))
        return tuple(stack)

    def mul(self, xs: Word, ys: Word) -> Word:
        """Product of two reduced words (cancellation only at the junction)."""
        if not xs:
            return ys
        if not ys:
            return xs
        i, j = len(xs), 0
        factors = self.factors
        while i > 0 and j < len(ys) and xs[i - 1][0] == ys[j][0]:
            f = ys[j][0]
            G = factors[f]
            m = G.mul(xs[i - 1][1], ys[j][1])
            if m == G.identity:
                i -= 1
                j += 1
            else:
                return xs[: i - 1] + ((f, m),) + ys[j + 1:]
        return xs[:i] + ys[j:]

    def mul_many(self, *words: Word) -> Word:
        out = ()
        for w in words:
            out = self.mul(out, w)
        return out

    def inv(self, x: Word) -> Word:
        factors = self.factors
        return tuple((f, factors[f].inv(v)) for f, v in reversed(x))

    def conjugate(self, z: Word, x: Word) -> Word:
        """z x z^-1"""
        return self.mul(self.mul(z, x), self.inv(z))

    def power(self, x: Word, n: int) -> Word:
        if n < 0:
            x, n = self.inv(x), -n
        out, base = (), x
        while n:
            if n & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            n >>= 1
        return out

    def is_identity(self, x: Word) -> bool:
        return not x

    def length(self, x: Word) -> int:
        return len(x)

    def element_order(self, x: Word, bound: int = 10_000):
        """Order of x: finite only for conjugates of factor elements."""
        _, core = cyclic_reduce(self, x)
        if not core:
            return 1
        if len(core) >= 2:
            return math.inf
        f, v = core[0]
        return self.factors[f].element_order(v, bound)

    # -- enumeration ---------------------------------------------------

    def alphabet(self, factor: int) -> list:
        """Letters of ``factor`` used for ball enumeration, in canonical order."""
        if factor in self._alphabets:
            return list(self._alphabets[factor])
        G = self.factors[factor]
        if not G.is_finite:
            raise ValueError(
                f"factor {factor} ({G!r}) is infinite; supply an alphabet to enumerate balls"
            )
        return [g for g in G.elements() if g != G.identity]

    def with_alphabets(self, alphabets: dict) -> "FreeProduct":
        fp = FreeProduct.__new__(FreeProduct)
        fp.__dict__.update(self.__dict__)
        fp._alphabets = {**self._alphabets, **alphabets}
        fp._letter_index = {}
        return fp

    def letter_key(self, letter) -> tuple:
        """Canonical order on letters: factor index, then factor order."""
        f, v = letter
        idx = self._letter_index.get(f)
        if idx is None:
            try:
                idx = {g: k for k, g in enumerate(self.alphabet(f))}
            except ValueError:
                idx = {}
            self._letter_index[f] = idx
        k = idx.get(v)
        if k is None:
            return (f, 1, repr(self.factors[f].sort_key(v)))
        return (f, 0, k)

    def word_key(self, x: Word) -> tuple:
        """Length-lexicographic sort key."""
        return (len(x), tuple(self.letter_key(l) for l in x))

    def ball(self, L: int, first_letter=None) -> Iterator[Word]:
        """Every reduced word of length <= L once, in length-lex order.

        ``first_letter`` restricts to the words starting with that letter
        (the empty word is then omitted); the first letters partition the
        rest of the ball.
        """
        letters = [[(f, v) for v in self.alphabet(f)] for f in range(self.rank)]
        if first_letter is None:
            if L < 0:
                return
            yield ()
            layer = [()]
            n0 = 1
        else:
            if L < 1:
                return
            layer = [(first_letter,)]
            yield layer[0]
            n0 = 2
        for _ in range(n0, L + 1):
            nxt = []
            for w in layer:
                last = w[-1][0] if w else None
                for f in range(self.rank):
                    if f != last:
                        nxt.extend(w + (letter,) for letter in letters[f])
            yield from nxt
            layer = nxt

    # -- text and JSON -------------------------------------------------

    def format_letter(self, letter) -> str:
        f, v = letter
        G = self.factors[f]
        for name in self._gen_of_factor[f]:
            g = self._symbols[name][1]
            if G.is_finite:
                n = G.element_order(g)
                x = g
                for k in range(1, int(n)):
                    if x == v:
                        return name if k == 1 else f"{name}^{k}"
                    x = G.mul(x, g)
            else:
                # infinite cyclic generator: value is g^k for some integer k
                if len(self._gen_of_factor[f]) == 1 and getattr(G, "rank", None) == 1:
                    k = G.exponent_sum(v)
                    return name if k == 1 else f"{name}^{k}"
        return f"[{f}:{G.format(v)}]"

    def format(self, x: Word) -> str:
        if not x:
            return "e"
        return " ".join(self.format_letter(l) for l in x)

    _TOKEN = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)(?:\^(-?\d+))?$")

    def parse(self, text: str) -> Word:
        """Parse a product such as ``"s t^2 s"`` (``e`` is the identity)."""
        out = ()
        for tok in re.split(r"[\s*·]+", text.strip()):
            if not tok or tok == "e":
                continue
            m = self._TOKEN.match(tok)
            if not m or m.group(1) not in self._symbols:
                known = ", ".join(self.names)
                raise ValueError(f"cannot parse {tok!r} (known generators: {known})")
            f, g = self._symbols[m.group(1)]
            exp = int(m.group(2)) if m.group(2) is not None else 1
            out = self.mul(out, self.letter(f, self.factors[f].power(g, exp)))
        return out

    def to_json(self, x: Word) -> list:
        return [[f, self.factors[f].to_json(v)] for f, v in x]

    def from_json(self, obj) -> Word:
        letters = []
        for item in obj:
            f, v = item
            letters.append((f, self.factors[f].from_json(v)))
        return self.reduce(letters)

    def spec_json(self) -> dict:
        return {"factors": [G.spec_json() for G in self.factors], "names": self.names}

    @classmethod
    def from_spec(cls, obj: dict) -> "FreeProduct":
        factors = [group_from_spec(f) for f in obj["factors"]]
        return cls(factors, obj.get("names"))


# -- module-level operations ----------------------------------------------


def reduce(spec: FreeProduct, raw) -> Word:
    return spec.reduce(raw)


def multiply(spec: FreeProduct, x: Word, y: Word) -> Word:
    return spec.mul(spec.check(x), spec.check(y))


def invert(spec: FreeProduct, x: Word) -> Word:
    return spec.inv(spec.check(x))


def conjugate(spec: FreeProduct, z: Word, x: Word) -> Word:
    return spec.conjugate(spec.check(z), spec.check(x))


def word_length(x: Word) -> int:
    return len(x)


def is_cyclically_reduced(x: Word) -> bool:
    return len(x) <= 1 or x[0][0] != x[-1][0]


def cyclic_reduce(spec: FreeProduct, x: Word) -> tuple[Word, Word]:
    """Split x = w * core * w^-1 with ``core`` cyclically reduced.

    Matching inverse end letters are peeled off into ``w``.  If the two
    end letters share a factor without cancelling, one more conjugation
    merges them and the loop stops.
    """
    w = []
    core = x
    while len(core) >= 2 and core[0][0] == core[-1][0]:
        f = core[0][0]
        G = spec.factors[f]
        first, last = core[0][1], core[-1][1]
        w.append(core[0])
        merged = G.mul(last, first)
        if merged == G.identity:
            core = core[1:-1]
        else:
            core = core[1:-1] + ((f, merged),)
            break
    return tuple(w), core


def _factor_conjugate(G: Group, x, y) -> bool:
    if x == y:
        return True
    if G.is_finite:
        return any(G.mul(G.mul(g, x), G.inv(g)) == y for g in G.elements())
    if hasattr(G, "rank"):
        # free group: compare cyclic rotations of the cyclically reduced forms
        def core(w):
            w = list(w)
            while len(w) >= 2 and w[0][0] == w[-1][0]:
                gen = w[0][0]
                e = w[0][1] + w[-1][1]
                if len(w) == 2:
                    return [(gen, e)] if e else []
                mid = w[1:-1]
                if e == 0:
                    w = mid
                else:
                    return mid + [(gen, e)] if mid[-1][0] != gen else w
            return w

        cx, cy = core(x), core(y)
        if len(cx) != len(cy):
            return False
        return any(cx[i:] + cx[:i] == cy for i in range(max(1, len(cx))))
    raise ValueError(f"no conjugacy test for {G!r}")


def conjugate_as_cyclic_words(spec: FreeProduct, x: Word, y: Word) -> bool:
    """Whether cyclically reduced x and y are cyclic rotations of each other.

    Words of length <= 1 live in a single factor, where conjugacy is
    decided inside that factor.
    """
    if not (is_cyclically_reduced(x) and is_cyclically_reduced(y)):
        raise ValueError("both words must be cyclically reduced")
    if len(x) != len(y):
        return False
    if len(x) == 0:
        return True
    if len(x) == 1:
        (fx, vx), (fy, vy) = x[0], y[0]
        return fx == fy and _factor_conjugate(spec.factors[fx], vx, vy)
    return any(x[i:] + x[:i] == y for i in range(len(x)))


def enumerate_ball(spec: FreeProduct, L: int) -> Iterator[Word]:
    return spec.ball(L)


# -- subgroup patterns ----------------------------------------------------


@dataclass
class Membership:
    """Outcome of a membership test.

    ``status`` is ``"member"``, ``"not-member"`` or ``"inconclusive"``;
    for members ``syllables`` multiply out to the tested word and
    ``labels`` says which generator power each syllable is.
    """

    status: str
    syllables: list = field(default_factory=list)
    labels: list = field(default_factory=list)

    def __bool__(self):
        return self.status == "member"


class SubgroupPattern:
    spec: FreeProduct

    def member(self, x: Word) -> Membership:
        raise NotImplementedError

    def elements(self, L: int) -> list[Word]:
        raise NotImplementedError


class FreeFactorPattern(SubgroupPattern):
    """The copy of one factor inside the free product."""

    def __init__(self, spec: FreeProduct, index: int):
        self.spec, self.index = spec, index

    def member(self, x):
        if not x:
            return Membership("member")
        if len(x) == 1 and x[0][0] == self.index:
            return Membership("member", [x], [(self.index, x[0][1])])
        return Membership("not-member")

    def elements(self, L):
        if L < 1:
            return [()]
        return [()] + [((self.index, v),) for v in self.spec.alphabet(self.index)]


class CyclicPairPattern(SubgroupPattern):
    """<a> * <b> for finite-order words a and b generating a free product."""

    def __init__(self, spec: FreeProduct, a: Word, b: Word, check_budget: int = 4):
        self.spec = spec
        self.a, self.b = spec.check(a), spec.check(b)
        self.order_a = spec.element_order(a)
        self.order_b = spec.element_order(b)
        if not (self.order_a < math.inf and self.order_b < math.inf):
            raise ValueError("both generators must have finite order")
        if self.order_a < 2 or self.order_b < 2:
            raise ValueError("both generators must be nontrivial")
        # syllables: (label, exponent, word)
        self.syllables = [("a", i, spec.power(a, i)) for i in range(1, int(self.order_a))]
        self.syllables += [("b", j, spec.power(b, j)) for j in range(1, int(self.order_b))]
        self._max_syllable = max(len(s[2]) for s in self.syllables)
        self._check_free(check_budget)

    def _check_free(self, budget: int):
        """No alternating product of <= budget syllables collapses to e."""
        spec = self.spec
        frontier = [((), None)]
        for _ in range(budget):
            nxt = []
            for w, last in frontier:
                for lab, _, syl in self.syllables:
                    if lab == last:
                        continue
                    y = spec.mul(w, syl)
                    if not y:
                        raise ValueError("generators do not generate a free product")
                    nxt.append((y, lab))
            frontier = nxt

    def member(self, x: Word) -> Membership:
        spec = self.spec
        if not x:
            return Membership("member")
        cap = len(x) + 2

        def dfs(rem, last, depth):
            if not rem:
                return []
            if depth >= cap:
                return None
            cands = []
            for lab, e, syl in self.syllables:
                if lab == last:
                    continue
                r2 = spec.mul(spec.inv(syl), rem)
                if len(r2) < len(rem):
                    cands.append((len(r2), lab, e, syl, r2))
            cands.sort(key=lambda c: c[0])
            for _, lab, e, syl, r2 in cands:
                rest = dfs(r2, lab, depth + 1)
                if rest is not None:
                    return [(lab, e, syl)] + rest
            return None

        found = dfs(x, None, 0)
        if found is None:
            return Membership("not-member")
        return Membership(
            "member", [s for _, _, s in found], [(lab, e) for lab, e, _ in found]
        )

    def elements(self, L: int) -> list[Word]:
        spec = self.spec
        slack = self._max_syllable
        seen = {()}
        stack = [((), None, 0)]
        depth_cap = L + 2 * slack + 2
        while stack:
            w, last, d = stack.pop()
            if d >= depth_cap:
                continue
            for lab, _, syl in self.syllables:
                if lab == last:
                    continue
                y = spec.mul(w, syl)
                if len(y) > L + slack:
                    continue
                if len(y) <= L:
                    seen.add(y)
                stack.append((y, lab, d + 1))
        return sorted(seen, key=spec.word_key)


class GeneratedPattern(SubgroupPattern):
    """Subgroup generated by ``gens``, explored breadth first.

    ``budget`` bounds the number of distinct elements visited.  A word is
    reported ``not-member`` only when the exploration closes up (the
    subgroup is finite and fully listed); otherwise ``inconclusive``.
    """

    def __init__(self, spec: FreeProduct, gens: Sequence[Word], budget: int = 20_000):
        self.spec = spec
        self.gens = [spec.check(g) for g in gens]
        self.budget = budget
        self._explored = None

    def _explore(self):
        if self._explored is not None:
            return self._explored
        spec = self.spec
        steps = []
        for i, g in enumerate(self.gens):
            steps.append(((i, 1), g))
            steps.append(((i, -1), spec.inv(g)))
        parent = {(): None}
        queue = deque([()])
        closed = True
        while queue:
            x = queue.popleft()
            for label, s in steps:
                y = spec.mul(x, s)
                if y in parent:
                    continue
                if len(parent) >= self.budget:
                    closed = False
                    queue.clear()
                    break
                parent[y] = (x, label)
                queue.append(y)
        self._explored = (parent, closed)
        return self._explored

    def member(self, x):
        parent, closed = self._explore()
        if x in parent:
            labels, syllables = [], []
            y = x
            while parent[y] is not None:
                prev, (i, e) = parent[y]
                labels.append((i, e))
                syllables.append(self.gens[i] if e > 0 else self.spec.inv(self.gens[i]))
                y = prev
            return Membership("member", syllables[::-1], labels[::-1])
        return Membership("not-member" if closed else "inconclusive")

    def elements(self, L):
        parent, _ = self._explore()
        return sorted((x for x in parent if len(x) <= L), key=self.spec.word_key)


def cyclic_pair(spec: FreeProduct, a: Word, b: Word) -> CyclicPairPattern:
    return CyclicPairPattern(spec, a, b)


def conjugated_pair(spec: FreeProduct, a: Word, b: Word, k: Word) -> CyclicPairPattern:
    """<a> * k<b>k^-1"""
    return CyclicPairPattern(spec, a, spec.conjugate(k, b))


def pattern_member(P: SubgroupPattern, x: Word) -> Membership:
    return P.member(P.spec.check(x))


def pattern_elements(P: SubgroupPattern, L: int) -> list[Word]:
    return P.elements(L)


# -- bounded intersection oracle ------------------------------------------


@dataclass
class BoundedIntersectionReport:
    """All x in P1 with |x| <= budget and z x z^-1 in P2.

    ``infinite_order_found`` flags an element with cyclic core of length
    at least two, the ball-level witness for an infinite intersection.
    """

    conjugator: Word
    budget: int
    elements: list
    verdict: str
    infinite_order_found: bool = False

    @property
    def trivial(self) -> bool:
        return self.verdict == "trivial-at-budget"


def bounded_conjugate_intersection(
    P1: SubgroupPattern, P2: SubgroupPattern, z: Word, L: int = 6
) -> BoundedIntersectionReport:
    spec = P1.spec
    zi = spec.inv(z)
    found = []
    inconclusive = False
    for x in P1.elements(L):
        y = spec.mul(spec.mul(z, x), zi)
        m = P2.member(y)
        if m.status == "member":
            found.append(x)
        elif m.status == "inconclusive":
            inconclusive = True
    infinite = any(len(cyclic_reduce(spec, x)[1]) >= 2 for x in found)
    if any(found_x for found_x in found):
        verdict = "nontrivial"
    elif inconclusive:
        verdict = "budget-inconclusive"
    else:
        verdict = "trivial-at-budget"
    return BoundedIntersectionReport(z, L, found, verdict, infinite)


# -- power growth ---------------------------------------------------------


def power_growth_defect(spec: FreeProduct, x: Word) -> int:
    """2|w| + |core| - |x|: 0 when w core w^-1 is already reduced, 1 when
    the last peeling step merged two end letters."""
    w, core = cyclic_reduce(spec, x)
    return 2 * len(w) + len(core) - len(x)


def check_power_growth(spec: FreeProduct, x: Word, nmax: int, merge_aware: bool = False) -> bool:
    """Whether |x^n| = n|core| + 2|w| for 1 <= n <= nmax, where x = w core w^-1.

    With ``merge_aware`` the right side is lowered by the merge defect of
    ``power_growth_defect``, which is the same for every n.
    """
    w, core = cyclic_reduce(spec, x)
    if len(core) < 2:
        raise ValueError("cyclically reduced core must have length >= 2")
    d = power_growth_defect(spec, x) if merge_aware else 0
    y = ()
    for n in range(1, nmax + 1):
        y = spec.mul(y, x)
        if len(y) != n * len(core) + 2 * len(w) - d:
            return False
    return True


def power_growth_failures(spec: FreeProduct, L: int, nmax: int, merge_aware=False) -> list:
    out = []
    for x in spec.ball(L):
        if len(cyclic_reduce(spec, x)[1]) >= 2 and not check_power_growth(spec, x, nmax, merge_aware):
            out.append(x)
    return out


# -- decomposition of w (two settings) ------------------------------------


@dataclass
class WDecomposition:
    found: bool
    setting: int
    u: Word = ()
    v: Word = ()
    w0: Word = ()
    w1: Word | None = None
    conjugator: Word | None = None
    problems: list = field(default_factory=list)


def check_w_decomposition(
    spec: FreeProduct,
    G: int,
    K: int,
    a1: Word,
    b1: Word,
    w: Word,
    a: Word,
    b: Word,
    k: Word | None = None,
    L: int = 6,
    z_radius: int = 2,
) -> WDecomposition:
    """Look for the canonical split of ``w`` when a conjugate of
    <a1> * <w b1 w^-1> meets the target in an infinite subgroup.

    Setting 1 (``k is None``): target <a> * <b>, a in factor G, b in K;
    expects w = u^-1 w0 v.  Setting 2: target <a> * k<b>k^-1 with a, b in
    G and k in K; expects w = u^-1 w1 k v.  The intersection hypothesis is
    tested on the ball: some z of length <= ``z_radius`` must give an
    intersection containing an element of infinite order.
    """
    setting = 1 if k is None else 2
    target = CyclicPairPattern(spec, a, b) if k is None else conjugated_pair(spec, a, b, k)
    rep = WDecomposition(False, setting)
    if spec.element_order(a1) != 2 or spec.element_order(b1) != 3:
        rep.problems.append("a1 must have order 2 and b1 order 3")
        return rep
    try:
        source = CyclicPairPattern(spec, a1, spec.conjugate(w, b1))
    except ValueError as exc:
        rep.problems.append(f"a1 and w b1 w^-1 are not free at the budget: {exc}")
        return rep
    for z in spec.ball(z_radius) if _finite_letters(spec) else [()]:
        r = bounded_conjugate_intersection(source, target, z, L)
        if r.infinite_order_found:
            rep.conjugator = z
            break
    if rep.conjugator is None:
        rep.problems.append("no conjugate of the source meets the target in an infinite subgroup")
        return rep

    left = a1[0][0]
    right = b1[0][0]
    rest = w
    if rest and rest[0][0] == left:
        rep.u = spec.inv(rest[:1])
        rest = rest[1:]
    if rest and rest[-1][0] == right:
        rep.v = rest[-1:]
        rest = rest[:-1]
    rep.w0 = rest
    if spec.mul_many(spec.inv(rep.u), rep.w0, rep.v) != w:
        rep.problems.append("split does not multiply back to w")

    if spec.conjugate(rep.u, a1) != a:
        rep.problems.append("u a1 u^-1 != a")
    vb = spec.conjugate(rep.v, b1)
    if vb not in (b, spec.inv(b)):
        rep.problems.append("v b1 v^-1 is not b^(+-1)")

    if setting == 1:
        if left != G or right != K:
            rep.problems.append("expected a1 in G and b1 in K")
        core = rep.w0
        start_ok = lambda x: x[:1] in (b, spec.inv(b))
    else:
        if left != G or right != G:
            rep.problems.append("expected a1 and b1 in G")
        core = spec.mul(rep.w0, spec.inv(k))
        rep.w1 = core
        kb = spec.conjugate(k, b)
        kbi = spec.inv(kb)
        start_ok = lambda x: x[: len(kb)] in (kb, kbi)
    if not target.member(core):
        rep.problems.append("middle part is not in the target subgroup")
    elif core and not (start_ok(core) and core[-len(a):] == a):
        rep.problems.append("middle part has the wrong first or last letter")
    rep.found = not rep.problems
    return rep


def _finite_letters(spec: FreeProduct) -> bool:
    try:
        for f in range(spec.rank):
            spec.alphabet(f)
    except ValueError:
        return False
    return True


# -- index-2 Schreier rewriting ------------------------------------------


class NotInSubgroup(ValueError):
    pass


def schreier_rewrite(spec: FreeProduct, parity, c: Word, x: Word) -> list[tuple[str, Word]]:
    """Rewrite x in the kernel of a parity map onto Z/2.

    ``parity(letter)`` gives 0 or 1; the transversal is {e, c} with c a
    single odd letter.  Returns the nontrivial Schreier tokens in order as
    ``(coset, letter)`` pairs, the token being ``t * letter * rep(t*letter)^-1``
    for coset representative t ("e" or "c").  Odd x raises NotInSubgroup.
    """
    if len(c) != 1 or parity(c[0]) != 1:
        raise ValueError("c must be a single letter of odd parity")
    ci = spec.inv(c)
    coset = "e"
    tokens = []
    for letter in spec.check(x):
        lw = (letter,)
        if parity(letter) == 0:
            tokens.append((coset, letter))
        else:
            tok = spec.mul(lw, ci) if coset == "e" else spec.mul(c, lw)
            if tok:
                tokens.append((coset, letter))
            coset = "c" if coset == "e" else "e"
    if coset != "e":
        raise NotInSubgroup("odd parity: not in the index-2 subgroup")
    return tokens


def schreier_token_word(spec: FreeProduct, parity, c: Word, token) -> Word:
    """The ambient word ``t * letter * rep(t*letter)^-1`` of a token."""
    coset, letter = token
    t = c if coset == "c" else ()
    flipped = (coset == "e") == (parity(letter) == 1)
    rep = c if flipped else ()
    return spec.mul_many(t, (letter,), spec.inv(rep))
