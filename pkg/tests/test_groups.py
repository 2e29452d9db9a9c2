import math
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from latticeforge.freeprod import FreeProduct
from latticeforge.gf import GF, field
from latticeforge.groups import (
    SL2,
    Alternating,
    CapExceeded,
    Cyclic,
    FreeGroup,
    GElem,
    GroupHom,
    GroupMismatchError,
    MatrixGroup,
    Symmetric,
    apply_hom,
    closure,
    conj,
    cycle_perm,
    cycles,
    format_cycles,
    group_from_spec,
    identity_hom,
    order_of,
    parity,
)

# -- finite fields -----------------------------------------------------------


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_prime_field_is_integers_mod_p(p):
    F = field(p, 1)
    for x, y in product(range(p), repeat=2):
        assert F.add(x, y) == (x + y) % p
        assert F.mul(x, y) == (x * y) % p
        if y:
            assert F.mul(F.inv(y), y) == 1


@pytest.mark.parametrize("p,m", [(2, 2), (2, 3), (3, 2)])
def test_extension_field_axioms(p, m):
    F = GF(p, m)
    q = F.q
    for x, y in product(range(q), repeat=2):
        assert F.add(x, y) == F.add(y, x)
        assert F.mul(x, y) == F.mul(y, x)
        assert F.add(x, F.neg(x)) == 0
        for z in range(q):
            assert F.mul(x, F.add(y, z)) == F.add(F.mul(x, y), F.mul(x, z))
    # the multiplicative group is cyclic of order q - 1
    assert sorted(F._exp[: q - 1]) == list(range(1, q))


def test_field_errors():
    with pytest.raises(ValueError):
        GF(4)
    with pytest.raises(ZeroDivisionError):
        field(5).inv(0)


def test_matrix_inverse_and_det():
    F = field(3, 2)
    A = ((1, 2), (3, 4))
    assert F.mat_mul(A, F.mat_inv(A)) == F.identity_matrix(2)
    assert F.det(((1, 0), (0, 1))) == 1


# -- permutations ---------------------------------------------------------------


def test_conjugated_three_cycles():
    S = Symmetric(6)
    b1 = GElem(S, cycle_perm(6, (2, 3, 4)))
    b2 = GElem(S, cycle_perm(6, (4, 5, 6)))
    assert conj(b1, b2).value == cycle_perm(6, (2, 5, 6))
    assert (~b1 * b2 * b1).value == cycle_perm(6, (3, 5, 6))
    assert format_cycles((~b1 * b2 * b1).value) == "(3 5 6)"


def test_order_of_examples():
    S = Symmetric(4)
    assert order_of(GElem(S, cycle_perm(4, (1, 2), (3, 4)))) == 2
    F = FreeGroup(2)
    assert order_of(GElem(F, F.generator(0))) == math.inf
    assert order_of(GElem(F, ())) == 1


def test_cycles_and_parity():
    g = cycle_perm(5, (1, 3, 5), (2, 4))
    assert cycles(g) == [(1, 3, 5), (2, 4)]
    assert parity(g) == 1


def test_mismatched_groups():
    with pytest.raises(GroupMismatchError):
        GElem(Cyclic(2), 1) * GElem(Cyclic(3), 1)


def test_alternating_rejects_odd():
    with pytest.raises(ValueError):
        GElem(Alternating(4), cycle_perm(4, (1, 2)))


# -- closure ------------------------------------------------------------------------


def test_closure_examples():
    A4 = Alternating(4)
    assert closure([GElem(A4, A4.identity)]) == {GElem(A4, A4.identity)}
    gens = [GElem(A4, cycle_perm(4, (1, 2, 3))), GElem(A4, cycle_perm(4, (1, 2), (3, 4)))]
    assert len(closure(gens)) == 12


@pytest.mark.parametrize("n", [5, 6, 7])
def test_three_cycles_fixing_one_generate_stabilizer(n):
    A = Alternating(n)
    gens = [
        GElem(A, cycle_perm(n, (i, j, k)))
        for i in range(2, n + 1)
        for j in range(i + 1, n + 1)
        for k in range(j + 1, n + 1)
    ]
    H = closure(gens)
    assert len(H) == math.factorial(n - 1) // 2
    assert all(g.value[0] == 0 for g in H)


def test_closure_cap():
    S = Symmetric(5)
    with pytest.raises(CapExceeded) as exc:
        closure([GElem(S, g) for g in S.generators()], cap=50)
    assert exc.value.cap == 50


@pytest.mark.parametrize("p,m", [(2, 1), (3, 1), (2, 2)])
def test_sl2_generators_generate(p, m):
    G = SL2(p, m)
    assert len(closure([GElem(G, g) for g in G.generators()])) == G.order() == len(G.elements())


def test_gl_order():
    G = MatrixGroup(2, 1, 2)
    assert len(G.elements()) == G.order() == 6
    assert len(closure([GElem(G, g) for g in G.generators()])) == 6


# -- axioms on random elements ---------------------------------------------------------


def _axioms(G, x, y, z):
    m = G.mul
    assert m(m(x, y), z) == m(x, m(y, z))
    assert m(x, G.identity) == x == m(G.identity, x)
    assert m(x, G.inv(x)) == G.identity


@given(st.permutations(range(5)), st.permutations(range(5)), st.permutations(range(5)))
def test_symmetric_axioms(x, y, z):
    _axioms(Symmetric(5), tuple(x), tuple(y), tuple(z))


@settings(max_examples=50)
@given(st.data())
def test_sl2_axioms(data):
    G = SL2(3, 1)
    pick = st.sampled_from(G.elements())
    _axioms(G, data.draw(pick), data.draw(pick), data.draw(pick))


free_words = st.lists(st.tuples(st.integers(0, 1), st.sampled_from([-2, -1, 1, 2])), max_size=6)


@given(free_words, free_words, free_words)
def test_free_group_axioms(a, b, c):
    F = FreeGroup(2)
    x, y, z = (F.mul((), w) for w in (a, b, c))
    assert F.contains(x)
    _axioms(F, x, y, z)


# -- homomorphisms ------------------------------------------------------------------


def test_identity_hom():
    S = Symmetric(4)
    f = identity_hom(S)
    for g in S.elements():
        assert apply_hom(f, g) == g


def test_hom_relation_check():
    GroupHom(Cyclic(4), Cyclic(2), {0: 1})
    with pytest.raises(ValueError, match="relations"):
        GroupHom(Cyclic(3), Cyclic(2), {0: 1})


def test_free_source_hom_into_free_product():
    F = FreeGroup(2, ["u", "v"])
    T = FreeProduct([Cyclic(2), Cyclic(3)], names=["s", "t"])
    f = GroupHom(F, T, {0: T.parse("s"), 1: T.parse("t")})
    assert apply_hom(f, ((0, 1), (1, 3))) == T.parse("s")
    assert apply_hom(f, ((1, -1),)) == T.parse("t^2")


@given(free_words, free_words)
def test_hom_respects_products(a, b):
    F = FreeGroup(2)
    T = FreeProduct([Cyclic(2), Cyclic(3)])
    f = GroupHom(F, T, {0: T.letter(0, 1), 1: T.mul(T.letter(1, 1), T.letter(0, 1))})
    x, y = F.mul((), a), F.mul((), b)
    assert apply_hom(f, F.mul(x, y)) == T.mul(apply_hom(f, x), apply_hom(f, y))


def test_hom_rejects_foreign_element():
    f = identity_hom(Cyclic(3))
    with pytest.raises(ValueError):
        apply_hom(f, 7)


# -- specs ----------------------------------------------------------------------------


@pytest.mark.parametrize(
    "spec",
    [
        {"kind": "cyclic", "n": 5},
        {"kind": "symmetric", "n": 3},
        {"kind": "alternating", "n": 6},
        {"kind": "free", "rank": 2},
        {"kind": "sl2", "p": 3, "m": 1},
        {"kind": "matrix-group", "p": 2, "m": 1, "degree": 3},
    ],
)
def test_spec_roundtrip(spec):
    G = group_from_spec(spec)
    assert group_from_spec(G.spec_json()) == G


def test_spec_errors():
    with pytest.raises(ValueError):
        group_from_spec({"kind": "cyclic"})
    with pytest.raises(ValueError):
        group_from_spec({"kind": "nope"})
    with pytest.raises(ValueError):
        group_from_spec({"kind": "sl2", "p": 4})


@pytest.mark.parametrize("G", [Symmetric(1), Symmetric(4), Alternating(3), Alternating(5)])
def test_generators_are_elements_and_generate(G):
    gens = G.generators()
    assert all(G.contains(g) for g in gens)
    if gens:
        assert len(closure([GElem(G, g) for g in gens])) == G.order()
