"""Brute-force oracles that share no search logic with the code they check."""

from __future__ import annotations

from itertools import product

from .freeprod import FreeProduct, Word
from .valuation import Step1Extension


def _runs_value(layer: Step1Extension, s: Word) -> int:
    """d * 0 on G * K1, straight from the definition: join over maximal G-runs."""
    table, out, run = layer.sl.table, layer.sl.zero, []
    for letter in s + ((None, None),):
        if letter[0] is not None and letter[0] < layer.n:
            run.append(letter)
        elif run:
            out = table[out][layer.inner.eval(tuple(run))]
            run = []
    return out


def _sub_ball(spec: FreeProduct, factors, L: int) -> list[Word]:
    """Reduced words of length <= L using only the given factors."""
    letters = [(f, v) for f in factors for v in spec.alphabet(f)]
    out, layer = [()], [()]
    for _ in range(L):
        layer = [w + (l,) for w in layer for l in letters if not w or w[-1][0] != l[0]]
        out.extend(layer)
    return out


def _skeletons(weight: int):
    """Sequences over {"L2", "L3"} with total K2-letter count <= weight (L2 counts 2)."""
    out = [()]
    frontier = [((), 0)]
    while frontier:
        nxt = []
        for seq, w in frontier:
            for kind, c in (("L2", 2), ("L3", 1)):
                if w + c <= weight:
                    nxt.append((seq + (kind,), w + c))
        out.extend(s for s, _ in nxt)
        frontier = nxt
    return out


def step1_factorizations(layer: Step1Extension, L: int) -> dict:
    """Every alternating L1/L2/L3 product of length <= L, by enumeration.

    Returns a map word -> list of factorizations, each a tuple of
    ``(kind, letter word)`` pairs.  The letters are enumerated from their
    definitions, the products formed by plain multiplication.  Pruning uses
    the fact that K2 letters in different big letters never cancel; that
    assumption is asserted for every product kept.
    """
    if layer.degenerate:
        raise ValueError("degenerate layer has no letter classes")
    sp = layer.spec
    n = layer.n
    h1, h1i = layer.h1, layer.h1_inv
    k1, k1i, k2, k2i = layer.k1, layer.k1_inv, layer.k2, layer.k2_inv
    s_words = [s for s in _sub_ball(sp, range(n + 1), L + 2 * len(h1))[1:] if _runs_value(layer, s) != layer.a]
    g_words = _sub_ball(sp, range(n), L)
    gammas = []
    for g in g_words[1:]:
        if layer.sl.leq(layer.inner.eval(g), layer.a):
            gamma = sp.mul_many(k1, g, k1i)
            if len(gamma) <= L:
                gammas.append(gamma)
    l2 = [(("L2", sp.mul_many(k2, gm, k2i)), len(gm)) for gm in gammas]
    l3 = [(("L3", sp.mul_many(h1, ((n + 1, z),), h1i)), 0) for z in sp.alphabet(n + 1)]

    def slot_options(left, right):
        pre = h1i if left == "L3" else ()
        post = h1 if right == "L3" else ()
        required = left is not None and left == right
        opts = [] if required else [(None, len(sp.mul(pre, post)))]
        if left is None and right is None:
            opts = []
        for s in s_words:
            seg = sp.mul_many(pre, s, post)
            if len(seg) <= L:
                opts.append((("L1", s), len(seg)))
        return opts

    found: dict = {(): [()]}
    for sk in _skeletons((L + 1) // 2):
        weight = sum(2 if k == "L2" else 1 for k in sk)
        kinds = (None,) + sk + (None,)
        slots = [slot_options(kinds[i], kinds[i + 1]) for i in range(len(sk) + 1)]
        bigs = [l2 if k == "L2" else l3 for k in sk]
        # interleave: slot0 big0 slot1 big1 ... slotm
        parts = []
        for i, sl in enumerate(slots):
            parts.append(sl)
            if i < len(bigs):
                parts.append(bigs[i])

        def rec(i, budget, chosen):
            if i == len(parts):
                letters = tuple(c for c in chosen if c is not None)
                x = sp.mul_many(*(w for _, w in letters))
                assert len(x) == L - budget, "K2 letters cancelled across big letters"
                found.setdefault(x, []).append(letters)
                return
            for item, cost in parts[i]:
                if cost <= budget:
                    rec(i + 1, budget - cost, chosen + [item])

        if weight <= L:
            rec(0, L - weight, [])
    return found


def parser_factorizations(layer: Step1Extension, x: Word) -> list:
    return [tuple((l.kind, l.word) for l in fac) for fac in layer.factorizations(x)]
