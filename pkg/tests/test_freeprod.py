from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from conftest import words_of
from latticeforge import freeprod as fp
from latticeforge.constructions.remark import LAMBDA, _parity
from latticeforge.freeprod import FreeProduct, NotInSubgroup, NotReducedError
from latticeforge.groups import Cyclic, FreeGroup, Symmetric, cycle_perm

Z2Z3 = FreeProduct([Cyclic(2), Cyclic(3)], names=["s", "t"])
S3Z3 = FreeProduct([Symmetric(3), Cyclic(3)], names=["p", "r", "k"])
A = S3Z3.letter(0, cycle_perm(3, (1, 2)))
B = S3Z3.letter(1, 1)
B3 = S3Z3.letter(0, cycle_perm(3, (1, 2, 3)))
K = S3Z3.letter(1, 1)


def P(text):
    return Z2Z3.parse(text)


# -- reduction and arithmetic -----------------------------------------------


def test_reduce_examples(z2z3):
    s, t = (0, 1), (1, 1)
    assert z2z3.reduce([(1, 1), (1, 2)]) == ()
    assert z2z3.reduce([s, t, t, t, s]) == ()
    x = z2z3.reduce([s, t, t])
    assert x == ((0, 1), (1, 2)) and z2z3.format(x) == "s t^2"


def test_identity_letters_dropped():
    assert Z2Z3.reduce([(0, 0), (1, 0)]) == ()


def test_check_rejects_unreduced():
    with pytest.raises(NotReducedError):
        Z2Z3.check(((0, 1), (0, 1)))
    with pytest.raises(NotReducedError):
        Z2Z3.check(((1, 0),))


def test_parse_and_format():
    assert Z2Z3.format(P("s t t t s")) == "e"
    assert P("t^-1") == P("t^2")
    with pytest.raises(ValueError):
        P("s q")


def test_conjugate_examples():
    x = P("s t")
    assert fp.conjugate(Z2Z3, (), x) == x
    assert fp.multiply(Z2Z3, x, fp.invert(Z2Z3, x)) == ()
    # b (a b) b^-1 = b a in S3 * Z/3
    assert fp.conjugate(S3Z3, B, S3Z3.mul(A, B)) == S3Z3.mul(B, A)


def test_json_roundtrip():
    x = S3Z3.mul_many(A, B, B3)
    assert S3Z3.from_json(S3Z3.to_json(x)) == x
    assert FreeProduct.from_spec(S3Z3.spec_json()) == S3Z3


def test_power_and_order():
    assert Z2Z3.element_order(P("s")) == 2
    assert Z2Z3.element_order(P("t s t^2")) == 2
    assert Z2Z3.element_order(P("s t")) == float("inf")
    assert Z2Z3.power(P("s t"), -1) == P("t^2 s")


WORDS = words_of(Z2Z3, 8)


@given(st.lists(st.sampled_from([(0, 1), (1, 1), (1, 2), (0, 0)]), max_size=12))
def test_reduce_idempotent(raw):
    x = Z2Z3.reduce(raw)
    assert Z2Z3.contains(x)
    assert Z2Z3.reduce(x) == x


@given(WORDS, WORDS, WORDS)
def test_multiply_associative(x, y, z):
    m = Z2Z3.mul
    assert m(m(x, y), z) == m(x, m(y, z))


@given(WORDS, WORDS)
def test_inverse_and_lengths(x, z):
    inv = Z2Z3.inv
    assert inv(inv(x)) == x
    assert len(inv(x)) == len(x)
    assert len(fp.conjugate(Z2Z3, z, x)) <= len(x) + 2 * len(z)


# -- balls ----------------------------------------------------------------------


def test_ball_examples():
    z2z2 = FreeProduct([Cyclic(2), Cyclic(2)], names=["s", "t"])
    assert [z2z2.format(w) for w in fp.enumerate_ball(z2z2, 3)] == ["e", "s", "t", "s t", "t s", "s t s", "t s t"]
    assert [Z2Z3.format(w) for w in Z2Z3.ball(2)] == ["e", "s", "t", "t^2", "s t", "s t^2", "t s", "t^2 s"]
    assert list(Z2Z3.ball(0)) == [()]


def ball_count(sizes, L):
    """Oracle: count alternating words by the last factor used."""
    if L == 0:
        return 1
    ending = [[0] * len(sizes) for _ in range(L + 1)]
    ending[1] = list(sizes)
    for k in range(2, L + 1):
        total = sum(ending[k - 1])
        for f, n in enumerate(sizes):
            ending[k][f] = n * (total - ending[k - 1][f])
    return 1 + sum(map(sum, ending[1:]))


@pytest.mark.parametrize("L", range(7))
def test_ball_sizes(L):
    words = list(Z2Z3.ball(L))
    assert len(words) == len(set(words)) == ball_count([1, 2], L)
    assert all(Z2Z3.contains(w) for w in words)
    assert words == sorted(words, key=Z2Z3.word_key)


def test_radius_six_ball_has_fifty_words():
    assert len(list(Z2Z3.ball(6))) == 50


def test_ball_partitions_by_first_letter():
    whole = set(S3Z3.ball(4))
    parts = [set(S3Z3.ball(4, first_letter=l)) for f in range(2) for l in [(f, v) for v in S3Z3.alphabet(f)]]
    assert sum(map(len, parts)) + 1 == len(whole)
    assert set().union(*parts) | {()} == whole


def test_infinite_factor_needs_alphabet():
    F = FreeProduct([FreeGroup(1), Cyclic(2)])
    with pytest.raises(ValueError):
        list(F.ball(2))
    G = F.with_alphabets({0: [((0, 1),), ((0, -1),)]})
    assert len(list(G.ball(2))) == 1 + 3 + 2 + 2


# -- cyclic reduction and conjugacy ---------------------------------------------------


def test_cyclic_reduce_examples():
    assert fp.cyclic_reduce(Z2Z3, P("s t")) == ((), P("s t"))
    assert fp.cyclic_reduce(Z2Z3, P("s t s")) == (P("s"), P("t"))
    assert fp.cyclic_reduce(Z2Z3, ()) == ((), ())


@pytest.mark.parametrize("x", list(Z2Z3.ball(6)), ids=Z2Z3.format)
def test_cyclic_reduce_is_conjugation(x):
    w, core = fp.cyclic_reduce(Z2Z3, x)
    assert fp.is_cyclically_reduced(core)
    assert Z2Z3.mul_many(w, core, Z2Z3.inv(w)) == x


def test_cyclic_words_examples():
    assert fp.conjugate_as_cyclic_words(Z2Z3, P("s t"), P("t s"))
    assert fp.conjugate_as_cyclic_words(Z2Z3, P("s t"), P("s t"))
    assert fp.conjugate_as_cyclic_words(Z2Z3, P("s t s t^2"), P("s t^2 s t"))
    assert not fp.conjugate_as_cyclic_words(Z2Z3, P("t"), P("t^2"))
    with pytest.raises(ValueError):
        fp.conjugate_as_cyclic_words(Z2Z3, P("s t s"), P("t"))


def test_cyclic_words_agree_with_search_oracle():
    cr = [x for x in Z2Z3.ball(4) if fp.is_cyclically_reduced(x)]
    zs = list(Z2Z3.ball(6))
    for x, y in product(cr, repeat=2):
        brute = any(Z2Z3.conjugate(z, x) == y for z in zs)
        assert fp.conjugate_as_cyclic_words(Z2Z3, x, y) == brute, (Z2Z3.format(x), Z2Z3.format(y))


# -- patterns ---------------------------------------------------------------------------


def test_conjugated_pair_membership():
    lam = fp.conjugated_pair(S3Z3, A, B3, K)
    kbk = S3Z3.conjugate(K, B3)
    x = S3Z3.mul_many(A, kbk, A)
    m = fp.pattern_member(lam, x)
    assert m and m.syllables == [A, kbk, A]
    assert S3Z3.mul_many(*m.syllables) == x
    assert not fp.pattern_member(lam, K)
    m = fp.pattern_member(lam, ())
    assert m and m.syllables == []


def test_pair_must_be_free():
    # (12) and (123) generate S3, a finite group
    with pytest.raises(ValueError):
        fp.cyclic_pair(S3Z3, A, B3)


def test_free_factor_pattern():
    P0 = fp.FreeFactorPattern(S3Z3, 1)
    assert P0.member(B) and not P0.member(A)
    assert len(P0.elements(3)) == 3


def test_cyclic_pair_agrees_with_bfs_on_radius_six():
    lam = fp.cyclic_pair(S3Z3, A, B)
    gen = fp.GeneratedPattern(S3Z3, [A, B], budget=20_000)
    members = 0
    for x in S3Z3.ball(6):
        mine, bfs = lam.member(x), gen.member(x)
        assert bool(mine) == bool(bfs), S3Z3.format(x)
        if mine:
            members += 1
            assert S3Z3.mul_many(*mine.syllables) == x
    assert members == len(lam.elements(6))


def test_generated_pattern_finite_closure():
    # (12) and (123) generate S3 inside the first factor
    gen = fp.GeneratedPattern(S3Z3, [A, B3])
    assert len(gen.elements(1)) == 6
    assert gen.member(K).status == "not-member"
    assert fp.GeneratedPattern(S3Z3, [A, B], budget=50).member(B3).status == "inconclusive"


# -- bounded intersections ------------------------------------------------------------------


def test_intersection_with_identity_conjugator_is_everything():
    lam = fp.cyclic_pair(S3Z3, A, B)
    r = fp.bounded_conjugate_intersection(lam, lam, (), 6)
    assert r.verdict == "nontrivial" and set(r.elements) == set(lam.elements(6))


def test_intersection_outside_is_trivial():
    lam = fp.cyclic_pair(S3Z3, A, B)
    z = S3Z3.letter(0, cycle_perm(3, (1, 2, 3)))
    r = fp.bounded_conjugate_intersection(lam, lam, z, 6)
    assert r.trivial and r.elements == [()]


def test_two_conjugated_pairs_meet_in_a_finite_group():
    k1 = K
    k2 = S3Z3.letter(1, 2)
    P1 = fp.conjugated_pair(S3Z3, A, B3, k1)
    P2 = fp.conjugated_pair(S3Z3, A, B3, k2)
    r = fp.bounded_conjugate_intersection(P1, P2, (), 6)
    # the common part is <a> = {e, a}: finite, no element of infinite order
    assert sorted(r.elements) == sorted([(), A])
    assert not r.infinite_order_found


# -- power growth ----------------------------------------------------------------------------


def test_power_growth_examples():
    x = P("s t")
    assert fp.check_power_growth(Z2Z3, x, 10)
    assert len(Z2Z3.power(x, 5)) == 10
    with pytest.raises(ValueError):
        fp.check_power_growth(Z2Z3, P("s"), 4)
    y = Z2Z3.mul_many(P("s"), x, P("s"))
    assert y == P("t s")  # s (s t) s^-1 collapses, no conjugator left
    assert fp.check_power_growth(Z2Z3, y, 5)


def test_power_growth_literal_failures_on_radius_four():
    bad = fp.power_growth_failures(Z2Z3, 4, 8)
    assert [Z2Z3.format(x) for x in bad] == ["t s t", "t^2 s t^2"]
    assert fp.power_growth_failures(Z2Z3, 4, 8, merge_aware=True) == []


@pytest.mark.parametrize("text", ["t s t", "t^2 s t^2"])
def test_merge_words_grow_by_odd_lengths(text):
    # |x^n| = 2n + 1 while the core has length 2: no integer conjugator length fits
    x = P(text)
    assert [len(Z2Z3.power(x, n)) for n in range(1, 5)] == [3, 5, 7, 9]
    assert len(fp.cyclic_reduce(Z2Z3, x)[1]) == 2


# -- w decompositions ------------------------------------------------------------------------------


def test_w_decomposition_trivial():
    r = fp.check_w_decomposition(S3Z3, 0, 1, A, B, (), A, B)
    assert r.found and r.u == r.v == r.w0 == ()


def test_w_decomposition_setting_two():
    r = fp.check_w_decomposition(S3Z3, 0, 0, A, B3, K, A, B3, K)
    assert r.found and r.u == r.v == () and r.w1 == ()


def test_w_decomposition_leading_a():
    w = S3Z3.mul(A, K)
    r = fp.check_w_decomposition(S3Z3, 0, 0, A, B3, w, A, B3, K)
    assert r.found
    assert r.u == A and r.w1 == ()
    assert S3Z3.mul_many(S3Z3.inv(r.u), r.w1, K, r.v) == w


def test_w_decomposition_rejects_bad_orders():
    r = fp.check_w_decomposition(S3Z3, 0, 1, A, A, (), A, B)
    assert not r.found and r.problems


# -- Schreier rewriting -----------------------------------------------------------------------------

C = LAMBDA.generator("c")


def L(text):
    return LAMBDA.parse(text)


def test_schreier_examples():
    toks = fp.schreier_rewrite(LAMBDA, _parity, C, L("c a c"))
    assert toks == [("c", L("a")[0])]
    assert fp.schreier_rewrite(LAMBDA, _parity, C, ()) == []
    toks = fp.schreier_rewrite(LAMBDA, _parity, C, L("a b c a c"))
    assert [(coset, f) for coset, (f, _) in toks] == [("e", 0), ("e", 1), ("c", 0)]
    with pytest.raises(NotInSubgroup):
        fp.schreier_rewrite(LAMBDA, _parity, C, C)


def test_schreier_needs_odd_letter():
    with pytest.raises(ValueError):
        fp.schreier_rewrite(LAMBDA, _parity, L("a"), ())


lambda_words = st.lists(st.sampled_from(["a", "a^-1", "b", "b^-1", "c", "a^2"]), max_size=10).map(
    lambda xs: LAMBDA.parse(" ".join(xs))
)


@settings(max_examples=200)
@given(lambda_words)
def test_schreier_round_trip(x):
    if sum(_parity(l) for l in x) % 2:
        with pytest.raises(NotInSubgroup):
            fp.schreier_rewrite(LAMBDA, _parity, C, x)
        return
    toks = fp.schreier_rewrite(LAMBDA, _parity, C, x)
    words = [fp.schreier_token_word(LAMBDA, _parity, C, t) for t in toks]
    assert LAMBDA.mul_many(*words) == x
