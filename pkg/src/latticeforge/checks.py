"""Named verification checks, each returning a VerificationReport.

These back both ``latticeforge verify <check>`` and the acceptance suite.
Budgets are parameters with documented defaults and are copied into the
report so every run is auditable.
"""

from __future__ import annotations

import math
import random
import time
from itertools import product

from . import freeprod as fp
from .constructions import remark, sl2, ulm
from .groups import Alternating, CapExceeded, Cyclic, GElem, Symmetric, closure, cycle_perm, format_cycles
from .oracles import parser_factorizations, step1_factorizations
from .order import JoinSemilattice, Poset, chain, diamond, phi_embedding, minimal_dense, random_poset
from .reports import VerificationReport
from .valuation import (
    BaseValuation,
    Step1Extension,
    containment_matrices,
    realize_lattice,
    valuation_axiom_failures,
)

LIMIT = 20  # counterexamples kept per report


def z2_z3() -> fp.FreeProduct:
    return fp.FreeProduct([Cyclic(2), Cyclic(3)], names=["s", "t"])


def _timed(rep: VerificationReport, t0: float, timing: bool) -> VerificationReport:
    if timing:
        rep.stats["seconds"] = round(time.perf_counter() - t0, 3)
    return rep


def word_calculus(ball: int = 6, triple_ball: int = 3, timing: bool = False, **_) -> VerificationReport:
    t0 = time.perf_counter()
    spec = z2_z3()
    rep = VerificationReport("word-calculus", {"spec": "Z/2 * Z/3", "ball": ball, "triple_ball": triple_ball})
    words = list(spec.ball(ball))
    for x in words:
        if spec.reduce(x) != x:
            rep.fail({"law": "reduce-idempotent", "x": spec.format(x)})
        xi = spec.inv(x)
        if spec.mul(x, xi) != () or spec.mul(xi, x) != ():
            rep.fail({"law": "inverse", "x": spec.format(x)})
        if spec.inv(xi) != x or spec.mul(x, ()) != x or spec.mul((), x) != x:
            rep.fail({"law": "involution/identity", "x": spec.format(x)})
    for x, y in product(words, repeat=2):
        # reduce of the raw concatenation must agree with junction-cancelling mul
        if spec.reduce(x + y) != spec.mul(x, y):
            rep.fail({"law": "reduce-confluent", "x": spec.format(x), "y": spec.format(y)})
    small = list(spec.ball(triple_ball))
    triples = 0
    for x, y, z in product(small, repeat=3):
        triples += 1
        if spec.mul(spec.mul(x, y), z) != spec.mul(x, spec.mul(y, z)):
            rep.fail({"law": "associativity", "x": spec.format(x), "y": spec.format(y), "z": spec.format(z)})
    del rep.counterexamples[LIMIT:]
    rep.stats.update(words=len(words), triples=triples)
    return _timed(rep.finish(), t0, timing)


def power_growth(ball: int = 4, nmax: int = 8, merge_aware: bool = False, timing: bool = False, **_) -> VerificationReport:
    """|x^n| = n|core| + 2|w| for every ball word whose core has length >= 2.

    The literal law fails on words like ``t s t`` where peeling merges two
    end letters (|x^n| = 2n + 1 with core length 2); ``merge_aware``
    subtracts that fixed defect.
    """
    t0 = time.perf_counter()
    spec = z2_z3()
    rep = VerificationReport("power-growth", {"spec": "Z/2 * Z/3", "ball": ball, "nmax": nmax, "merge_aware": merge_aware})
    checked = 0
    for x in spec.ball(ball):
        w, core = fp.cyclic_reduce(spec, x)
        if len(core) < 2:
            continue
        checked += 1
        if not fp.check_power_growth(spec, x, nmax, merge_aware):
            lengths = [len(spec.power(x, n)) for n in range(1, nmax + 1)]
            rep.fail({"x": spec.format(x), "conjugator": spec.format(w), "core": spec.format(core), "lengths": lengths})
    rep.stats["words_checked"] = checked
    return _timed(rep.finish(), t0, timing)


def s3_z3():
    spec = fp.FreeProduct([Symmetric(3), Cyclic(3)], names=["p", "r", "k"])
    a = spec.letter(0, cycle_perm(3, (1, 2)))
    b = spec.letter(1, 1)
    return spec, fp.cyclic_pair(spec, a, b)


def playing_with_words(z_ball: int = 5, L: int = 6, timing: bool = False, **_) -> VerificationReport:
    """z Lambda z^-1 meets Lambda trivially (at the budget) for z outside Lambda."""
    t0 = time.perf_counter()
    spec, lam = s3_z3()
    rep = VerificationReport("playing-with-words", {"spec": "S3 * Z/3", "Lambda": "<(12)> * <1 mod 3>", "z_ball": z_ball, "L": L})
    lam_ball = set(lam.elements(L))
    inside = outside = 0
    inconclusive = False
    for z in spec.ball(z_ball):
        r = fp.bounded_conjugate_intersection(lam, lam, z, L)
        if lam.member(z):
            inside += 1
            if set(r.elements) != lam_ball:
                rep.fail({"z": spec.format(z), "in_Lambda": True, "found": len(r.elements), "expected": len(lam_ball)})
        else:
            outside += 1
            if r.verdict == "budget-inconclusive":
                inconclusive = True
            elif not r.trivial:
                rep.fail({"z": spec.format(z), "in_Lambda": False, "elements": [spec.format(x) for x in r.elements[:5]]})
    del rep.counterexamples[LIMIT:]
    rep.stats.update(z_in_Lambda=inside, z_outside=outside, Lambda_ball=len(lam_ball))
    return _timed(rep.finish(inconclusive), t0, timing)


def elem_permutation(n: int | None = None, ns=(5, 6, 7), timing: bool = False, **_) -> VerificationReport:
    """The two 3-cycle conjugations, and <(ijk) : 2 <= i < j < k <= n> = stabilizer of 1."""
    t0 = time.perf_counter()
    ns = (n,) if n is not None else tuple(ns)
    rep = VerificationReport("elem-permutation", {"n": list(ns)})
    S = Symmetric(max(6, *ns))
    b1 = GElem(S, cycle_perm(S.n, (2, 3, 4)))
    b2 = GElem(S, cycle_perm(S.n, (4, 5, 6)))
    c1 = b1 * b2 * ~b1
    c2 = ~b1 * b2 * b1
    rep.stats["b1 b2 b1^-1"] = format_cycles(c1.value)
    rep.stats["b1^-1 b2 b1"] = format_cycles(c2.value)
    if c1.value != cycle_perm(S.n, (2, 5, 6)):
        rep.fail({"computation": "b1 b2 b1^-1", "got": format_cycles(c1.value), "expected": "(2 5 6)"})
    if c2.value != cycle_perm(S.n, (3, 5, 6)):
        rep.fail({"computation": "b1^-1 b2 b1", "got": format_cycles(c2.value), "expected": "(3 5 6)"})
    sizes = {}
    for m in ns:
        A = Alternating(m)
        gens = [GElem(A, cycle_perm(m, (i, j, k))) for i in range(2, m + 1) for j in range(i + 1, m + 1) for k in range(j + 1, m + 1)]
        H = closure(gens)
        sizes[m] = len(H)
        expected = math.factorial(m - 1) // 2
        if len(H) != expected or any(g.value[0] != 0 for g in H):
            rep.fail({"n": m, "closure_size": len(H), "expected": expected})
    rep.stats["closure_sizes"] = {str(k): v for k, v in sizes.items()}
    return _timed(rep.finish(), t0, timing)


def valuation_axioms(total: int = 8, element_budget: int = 1, timing: bool = False, **_) -> VerificationReport:
    """Valuation laws on all pairs with |x| + |y| <= total, diamond semilattice, Lambda = Z/2."""
    t0 = time.perf_counter()
    rl = realize_lattice(JoinSemilattice(diamond()), Cyclic(2), element_budget=element_budget)
    spec = rl.spec.with_alphabets({})
    rep = VerificationReport("valuation-axioms", {"poset": "diamond", "factor": "Z/2", "total": total, "element_budget": element_budget})
    bad, checked = valuation_axiom_failures(rl.valuation, spec, total, LIMIT)
    for b in bad:
        rep.fail([b[0]] + [spec.format(w) for w in b[1:]])
    rep.stats.update(pairs_checked=checked, factors=spec.rank, processed=rl.trace["processed"])
    return _timed(rep.finish(), t0, timing)


def step1_layer(poset: Poset | None = None, g0_name: str = "x1"):
    sl = JoinSemilattice(poset or chain(2))
    base = BaseValuation(sl, Cyclic(2))
    return Step1Extension(base, base.spec.generator(g0_name), Cyclic(2), Cyclic(2))


def step1_uniqueness(ball: int = 5, timing: bool = False, **_) -> VerificationReport:
    """Parser vs brute-force enumeration of alternating L1/L2/L3 products."""
    t0 = time.perf_counter()
    layer = step1_layer()
    sp = layer.spec
    rep = VerificationReport("step1-uniqueness", {"poset": "2-chain", "factor": "Z/2", "g0": "x1", "ball": ball})
    oracle = step1_factorizations(layer, ball)
    words = factored = 0
    for x in sp.ball(ball):
        words += 1
        mine = sorted(parser_factorizations(layer, x))
        theirs = sorted(oracle.get(x, []))
        factored += bool(theirs)
        if len(theirs) > 1 or len(mine) > 1:
            rep.fail({"x": sp.format(x), "problem": "several factorizations", "count": max(len(mine), len(theirs))})
        elif mine != theirs:
            rep.fail({"x": sp.format(x), "problem": "parser and oracle disagree", "parser": len(mine), "oracle": len(theirs)})
    del rep.counterexamples[LIMIT:]
    rep.stats.update(words=words, factorizable=factored)
    return _timed(rep.finish(), t0, timing)


STANDARD_POSETS = {
    "singleton": lambda: chain(1),
    "chain2": lambda: chain(2),
    "diamond": diamond,
}


def theorem_g(posets=("singleton", "chain2", "diamond"), ball: int = 4, timing: bool = False, **_) -> VerificationReport:
    """Ideal inclusions vs K(J) ball containments, and the join-membership witnesses."""
    t0 = time.perf_counter()
    rep = VerificationReport("theorem-g", {"posets": list(posets), "factor": "Z/2", "ball": ball})
    for name in posets:
        rl = realize_lattice(JoinSemilattice(STANDARD_POSETS[name]()), Cyclic(2))
        inc, cont = containment_matrices(rl, ball)
        if inc != cont:
            rep.fail({"poset": name, "problem": "containment matrix differs", "ideals": inc, "balls": cont})
        witnessed = 0
        for layer in rl.valuation.layers:
            g = layer.g0
            inner = rl.spec.with_alphabets({}).ball  # finite factors
            for h in inner(ball):
                if any(f >= layer.n for f, _ in h) or not rl.sl.leq(rl.delta(h), rl.delta(g)):
                    continue
                problems = rl.check_witness(rl.witness_join_membership(h, g), h, g)
                if problems:
                    rep.fail({"poset": name, "g": rl.spec.format(g), "h": rl.spec.format(h), "problems": problems})
                else:
                    witnessed += 1
        rep.stats[name] = {
            "ideals": len(inc),
            "factors": rl.spec.rank,
            "processed": rl.trace["processed"],
            "witnessed": witnessed,
        }
    del rep.counterexamples[LIMIT:]
    return _timed(rep.finish(), t0, timing)


def sl2_construction(qs=((2, 1), (3, 1)), subgroup_q=(2, 1), cap: int = 1 << 16, timing: bool = False, **_) -> VerificationReport:
    t0 = time.perf_counter()
    from .order import antichain

    rep = VerificationReport("sl2", {"difference_span_q": [p**m for p, m in qs], "subgroup_q": subgroup_q[0] ** subgroup_q[1], "cap": cap})
    for p, m in qs:
        q = p**m
        full = q * q
        for v in product(range(q), repeat=2):
            if v != (0, 0) and len(sl2.sl2_difference_span(p, m, v)) != full:
                rep.fail({"q": q, "v": list(v), "problem": "difference span is not the whole plane"})
    counts = {}
    capped = []
    for name, P, expected in (("singleton", chain(1), 2), ("chain2", chain(2), 3), ("antichain2", antichain(2), 4)):
        c = sl2.build_sl2(*subgroup_q, P)
        try:
            found = sl2.invariant_subgroups(c, cap)
        except CapExceeded:
            capped.append(name)
            continue
        counts[name] = len(found)
        if len(found) != expected or found != sl2.expected_subgroups(c):
            rep.fail({"poset": name, "found": len(found), "expected": expected})
    rep.stats["invariant_subgroups"] = counts
    if capped:
        rep.stats["over_cap"] = capped
    return _timed(rep.finish(inconclusive=bool(capped)), t0, timing)


def remark_identity(ball: int = 3, injectivity_ball: int = 4, timing: bool = False, **_) -> VerificationReport:
    t0 = time.perf_counter()
    rep = VerificationReport("remark-identity", {"ball": ball, "injectivity_ball": injectivity_ball})
    expected = {"a": "u", "b": "vuv^-1", "c a c": "v^2uv^-2", "c b c": "v^3uv^-3"}
    got = remark.delta_values()
    for k, v in expected.items():
        if got[k] != v:
            rep.fail({"delta": k, "got": got[k], "expected": v})
    r = remark.check_remark_identity(ball, injectivity_ball, LIMIT)
    fmt = remark.LAMBDA.format
    for g, k, h in r.identity_failures:
        rep.fail({"g": fmt(g), "k": fmt(k), "h": fmt(h)})
    for x, y in r.collisions:
        rep.fail({"collision": [fmt(x), fmt(y)]})
    rep.stats.update(delta=got, triples=r.triples_checked, injectivity_words=r.injectivity_checked)
    return _timed(rep.finish(), t0, timing)


def ulm_phi(p: int = 2, lambdas=(1, 2, 3), posets: int = 100, max_size: int = 8, seed: int = 0, timing: bool = False, **_) -> VerificationReport:
    t0 = time.perf_counter()
    rep = VerificationReport("ulm-phi", {"p": p, "lambdas": list(lambdas), "posets": posets, "max_size": max_size}, seed=seed)
    exps = {}
    for lam in lambdas:
        U = ulm.ulm_group(p, lam)
        exps[lam] = U.exponent
        if U.exponent != p**lam:
            rep.fail({"lambda": lam, "exponent": U.exponent, "expected": p**lam})
    for lam in lambdas:
        for mu in lambdas:
            if lam <= mu and not ulm.natural_map_respects_relations(p, lam, mu):
                rep.fail({"map": [lam, mu], "problem": "relation not respected"})
    rng = random.Random(seed)
    pairs = 0
    for t in range(posets):
        P = random_poset(rng, rng.randint(1, max_size))
        for dense in (list(range(P.n)), minimal_dense(P)):
            phi = phi_embedding(P, dense)
            for i in range(P.n):
                for j in range(P.n):
                    pairs += 1
                    if (phi[i] <= phi[j]) != P.leq(i, j):
                        rep.fail({"poset": P.to_json(), "dense": dense, "i": i, "j": j})
    del rep.counterexamples[LIMIT:]
    rep.stats.update(exponents={str(k): v for k, v in exps.items()}, phi_pairs=pairs)
    return _timed(rep.finish(), t0, timing)


CHECKS = {
    "word-calculus": word_calculus,
    "power-growth": power_growth,
    "playing-with-words": playing_with_words,
    "elem-permutation": elem_permutation,
    "valuation-axioms": valuation_axioms,
    "step1-uniqueness": step1_uniqueness,
    "theorem-g": theorem_g,
    "sl2": sl2_construction,
    "remark-identity": remark_identity,
    "ulm-phi": ulm_phi,
}
