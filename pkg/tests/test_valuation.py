import pytest
from hypothesis import given, settings, strategies as st

from latticeforge.freeprod import GeneratedPattern
from latticeforge.groups import Cyclic
from latticeforge.oracles import parser_factorizations, step1_factorizations
from latticeforge.order import JoinSemilattice, chain, diamond
from latticeforge.valuation import (
    BaseValuation,
    FreeZeroExtension,
    NotCovered,
    Step1Extension,
    containment_matrices,
    realize_lattice,
    step2_extension,
    surjectivity_pair,
    valuation_axiom_failures,
    verify_intermediate_correspondence,
)

Z2 = Cyclic(2)
ZERO, A, B, T = range(4)  # diamond elements


@pytest.fixture(scope="module")
def diamond_base():
    return BaseValuation(JoinSemilattice(diamond()), Z2)


@pytest.fixture(scope="module")
def diamond_layer(diamond_base):
    g0 = diamond_base.spec.generator("xa")
    return Step1Extension(diamond_base, g0, Z2, Z2)


@pytest.fixture(scope="module")
def diamond_rl():
    return realize_lattice(JoinSemilattice(diamond()), Z2)


# -- base valuation ---------------------------------------------------------------


def test_base_examples(diamond_base):
    v, sp = diamond_base, diamond_base.spec
    assert v(()) == ZERO
    assert v(sp.parse("xa xb")) == T
    assert v(sp.parse("x0")) == ZERO
    x = sp.parse("xa x0 xb xa")
    assert v(x) == v(sp.inv(x)) == T


def test_base_surjective(diamond_base):
    for c in range(4):
        w = diamond_base.letter_of_value(c)
        assert len(w) == 1 and diamond_base(w) == c


def test_base_rejects_trivial_group():
    with pytest.raises(ValueError):
        BaseValuation(JoinSemilattice(diamond()), Cyclic(1))


def test_base_is_join_of_letter_positions(diamond_base):
    sl = diamond_base.sl
    for x in diamond_base.spec.ball(4):
        assert diamond_base(x) == sl.join_all(f for f, _ in x)


# -- free zero extension ------------------------------------------------------------


def test_free_zero_extension(diamond_base):
    ext = FreeZeroExtension(diamond_base, Z2)
    sp = ext.spec
    k = ((4, 1),)
    assert ext(k) == ZERO
    u0, u1 = sp.parse("xa"), sp.parse("xb x0")
    assert ext(sp.mul_many(u0, k, u1)) == T
    assert ext(u1) == diamond_base(u1)


def test_free_zero_level_groups(diamond_base):
    """{x : (d * 0)(x) <= b} = G_d(b) * K on the ball: every G-run lies in G_d(b)."""
    ext = FreeZeroExtension(diamond_base, Z2)
    sl = ext.sl
    for x in ext.spec.ball(5):
        runs, cur = [], []
        for letter in x:
            if letter[0] < 4:
                cur.append(letter)
            else:
                runs.append(tuple(cur))
                cur = []
        runs.append(tuple(cur))
        for b in range(4):
            assert sl.leq(ext(x), b) == all(sl.leq(diamond_base(r), b) for r in runs)


# -- step 1 ---------------------------------------------------------------------------


def test_step1_examples(diamond_layer):
    L = diamond_layer
    sp = L.spec
    assert L.a == A and not L.degenerate
    assert L(L.k1) == ZERO
    for z in sp.alphabet(L.n + 1):
        assert L(sp.mul_many(L.h1, ((L.n + 1, z),), L.h1_inv)) == ZERO
    assert L(L.g0) == A
    assert L.l123_factorize(L.g0) is None


def test_step1_single_letters(diamond_layer):
    L = diamond_layer
    sp = L.spec
    gamma = sp.mul_many(L.k1, sp.parse("xa"), L.k1_inv)
    x = sp.mul_many(L.k2, gamma, L.k2_inv)
    fac = L.l123_factorize(x)
    assert [l.kind for l in fac] == ["L2"] and fac[0].core == gamma
    assert L.l123_factorize(()) == []


def test_step1_restricts_to_inner(diamond_layer, diamond_base):
    for x in diamond_base.spec.ball(4):
        assert diamond_layer(x) == diamond_base(x)


def test_step1_identity_branch(diamond_base):
    L = Step1Extension(diamond_base, (), Z2, Z2)
    ext = FreeZeroExtension(FreeZeroExtension(diamond_base, Z2), Z2)
    assert L.degenerate
    for x in L.spec.ball(4):
        assert L(x) == ext(x)


def test_step1_level_zero_g0_is_degenerate(diamond_base):
    L = Step1Extension(diamond_base, diamond_base.spec.parse("x0"), Z2, Z2)
    assert L.degenerate
    with pytest.raises(ValueError):
        list(L.factorizations(()))


def _level_generators(L, b):
    sp = L.spec
    base = L.inner
    small = [sp.letter(f, 1) for f in range(L.n) if L.sl.leq(base(sp.letter(f, 1)), b)]
    gens = small + [L.k1]
    if L.sl.leq(L.a, b):
        return gens + [L.k2]
    g1 = [sp.mul_many(L.k1, sp.letter(f, 1), L.k1_inv) for f in range(L.n) if L.sl.leq(base(sp.letter(f, 1)), L.a)]
    gens += [sp.mul_many(L.k2, g, L.k2_inv) for g in g1]
    gens += [sp.mul_many(L.h1, ((L.n + 1, 1),), L.h1_inv)]
    return gens


@pytest.mark.parametrize("b", [ZERO, A, B, T])
def test_level_groups_are_generated_as_expected(diamond_layer, b):
    L = diamond_layer
    gen = GeneratedPattern(L.spec, _level_generators(L, b), budget=150_000)
    for x in L.spec.ball(4):
        assert L.sl.leq(L(x), b) == bool(gen.member(x)), (L.spec.format(x), b)


def test_step1_axioms_small(diamond_layer):
    bad, checked = valuation_axiom_failures(diamond_layer, diamond_layer.spec, 5)
    assert bad == [] and checked > 1000


# -- factorization oracle -----------------------------------------------------------------


@pytest.mark.parametrize("radius", [5, 7])
def test_parser_matches_oracle_chain(radius):
    sl = JoinSemilattice(chain(2))
    base = BaseValuation(sl, Z2)
    L = Step1Extension(base, base.spec.generator("x1"), Z2, Z2)
    oracle = step1_factorizations(L, radius)
    for x in L.spec.ball(radius):
        mine = parser_factorizations(L, x)
        assert len(mine) <= 1
        assert sorted(mine) == sorted(oracle.get(x, []))


def test_parser_matches_oracle_diamond(diamond_layer):
    oracle = step1_factorizations(diamond_layer, 4)
    assert max(len(v) for v in oracle.values()) == 1
    for x in diamond_layer.spec.ball(4):
        assert parser_factorizations(diamond_layer, x) == oracle.get(x, [])


def test_oracle_counts_are_stable():
    sl = JoinSemilattice(chain(2))
    base = BaseValuation(sl, Z2)
    L = Step1Extension(base, base.spec.generator("x1"), Z2, Z2)
    # frozen from the enumeration: e, 10 words over {x0, k1}, two L2 letters
    assert len(step1_factorizations(L, 5)) == 13
    assert len(step1_factorizations(L, 7)) == 54


# -- step 2 and realization -------------------------------------------------------------------


def test_step2_budget_two_adds_four_factors(diamond_base):
    v = step2_extension(diamond_base, Z2, element_budget=2)
    assert v.spec.rank == diamond_base.spec.rank + 4
    for x in diamond_base.spec.ball(4):
        assert v(x) == diamond_base(x)


def test_step2_first_element_is_identity(diamond_base):
    v = step2_extension(diamond_base, Z2, element_budget=1)
    assert v.layers[0].g0 == () and v.layers[0].degenerate


def test_step2_rejects_bad_budget(diamond_base):
    with pytest.raises(ValueError):
        step2_extension(diamond_base, Z2, element_budget=0)


def test_step2_rounds(diamond_base):
    v = step2_extension(diamond_base, Z2, element_budget=1, rounds=2, skip_level_zero=True)
    assert len(v.layers) == 2 and len({l.g0 for l in v.layers}) == 2


def test_realize_singleton():
    rl = realize_lattice(JoinSemilattice(chain(1)), Z2)
    assert len(rl.ideals()) == 1
    assert all(rl.in_L(x) for x in rl.ball(4))


def test_realize_chain():
    rl = realize_lattice(JoinSemilattice(chain(2)), Z2)
    lo, hi = (set(d.members) for d in rl.ideals())
    x = rl.base.letter_of_value(1)
    assert rl.in_K(hi, x) and not rl.in_K(lo, x)
    inc, cont = containment_matrices(rl, 4)
    assert inc == cont == [[True, True], [False, True]]


@pytest.mark.slow
def test_realize_diamond_radius_five(diamond_rl):
    inc, cont = containment_matrices(diamond_rl, 5)
    assert len(inc) == 4 and inc == cont


def test_realize_trace(diamond_rl):
    assert diamond_rl.trace["processed"] == ["xa", "xb", "xt"]
    assert diamond_rl.trace["factors"] == 10


def test_surjectivity_gadget(diamond_rl):
    sl = diamond_rl.sl
    for a in range(4):
        for b in range(4):
            g, h = surjectivity_pair(diamond_rl, a, b)
            assert diamond_rl.delta(g) == a and diamond_rl.delta(h) == b
            assert diamond_rl.delta(diamond_rl.spec.mul(g, h)) == sl.join(a, b)


# -- witnesses ------------------------------------------------------------------------------------


def test_witness_examples(diamond_rl):
    rl = diamond_rl
    sp = rl.spec
    g = sp.parse("xa")
    assert rl.witness_join_membership((), g) == []
    x0 = sp.parse("x0")
    assert rl.witness_join_membership(x0, g) == [("L", x0)]
    w = rl.witness_join_membership(g, g)
    assert len(w) == 9
    assert rl.check_witness(w, g, g) == []
    assert sp.mul_many(*(y for _, y in w)) == g


def test_witness_errors(diamond_rl):
    rl = diamond_rl
    sp = rl.spec
    with pytest.raises(ValueError):
        rl.witness_join_membership(sp.parse("xb"), sp.parse("xa"))
    with pytest.raises(NotCovered):
        rl.witness_join_membership(sp.parse("xa"), sp.parse("xa xb"))


def test_bad_witness_is_caught(diamond_rl):
    rl = diamond_rl
    sp = rl.spec
    g = sp.parse("xa")
    w = rl.witness_join_membership(g, g)
    w[0] = ("L", sp.parse("xa"))
    assert rl.check_witness(w, g, g)


def test_correspondence(diamond_rl):
    rep = verify_intermediate_correspondence(diamond_rl, L=2)
    assert rep.ok and rep.witnessed > 0
    assert rep.ideal_of[()] == {ZERO}
    g = diamond_rl.spec.parse("xt")
    assert rep.ideal_of[g] == {ZERO, A, B, T}


def test_chain_correspondence():
    rl = realize_lattice(JoinSemilattice(chain(2)), Z2)
    rep = verify_intermediate_correspondence(rl, L=3)
    assert rep.ok and rep.witnessed > 0


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_axioms_on_random_pairs(diamond_rl, data):
    sp = diamond_rl.spec.with_alphabets({})
    letters = [(f, 1) for f in range(sp.rank)]
    word = st.lists(st.sampled_from(letters), max_size=7).map(sp.reduce)
    x, y = data.draw(word), data.draw(word)
    d = diamond_rl.delta
    sl = diamond_rl.sl
    assert d(sp.inv(x)) == d(x)
    assert sl.leq(d(sp.mul(x, y)), sl.join(d(x), d(y)))
