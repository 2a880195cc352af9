import pytest
from hypothesis import given, settings, strategies as st

from twistalex.catalog import CATALOG
from twistalex.laurent import LaurentPoly, T
from twistalex.presentation import (
    GR_ONE,
    IDENTITY,
    BraidWord,
    FreeWord,
    GroupRingElement,
    Presentation,
    artin_action,
    braid_to_presentation,
    connected_sum,
    fox_derivative,
    parse_word,
    unknot_presentation,
)
from twistalex.finite_reps import trivial_representation
from twistalex.twisted import twisted_report

x, y = FreeWord.gen(0), FreeWord.gen(1)
X, Y = x.inverse(), y.inverse()
TREFOIL_REL = x * y * x * Y * X * Y


def gr(*terms):
    out = GroupRingElement()
    for c, w in terms:
        out = out + GroupRingElement.of(w, c)
    return out


def trefoil(phi=(1, 1)):
    return Presentation(("x", "y"), (TREFOIL_REL,), phi)


def classical(P):
    return twisted_report(P, trivial_representation(P)).delta1


words = st.lists(st.tuples(st.integers(0, 2), st.sampled_from([1, -1])), max_size=8).map(lambda ls: FreeWord(tuple(ls)))


# -- words -----------------------------------------------------------------------------


def test_word_examples():
    assert x * X == IDENTITY
    assert (x * y).inverse() == Y * X
    assert (x * Y) * (y * x) == x * x


def test_free_reduction_on_construction():
    assert FreeWord(((0, 1), (1, 1), (1, -1), (0, -1))) == IDENTITY


@given(words, words)
def test_inverse_of_product(u, v):
    assert (u * v).inverse() == v.inverse() * u.inverse()
    assert u * u.inverse() == IDENTITY


def test_parse_word_notation():
    names = ["x", "y"]
    assert parse_word("x y x Y X Y", names) == TREFOIL_REL
    assert parse_word("x y x y' x' y'", names) == TREFOIL_REL
    assert parse_word("", names) == IDENTITY
    with pytest.raises(ValueError):
        parse_word("x z", names)


# -- Fox calculus ----------------------------------------------------------------------


def test_fox_examples():
    assert fox_derivative(x, 0) == GR_ONE
    assert fox_derivative(X, 0) == gr((-1, X))
    assert fox_derivative(x * y * X, 0) == gr((1, IDENTITY), (-1, x * y * X))
    assert fox_derivative(TREFOIL_REL, 0) == gr((1, IDENTITY), (1, x * y), (-1, x * y * x * Y * X))


def test_fox_other_generator_vanishes():
    assert not fox_derivative(y * y, 0)


def test_fox_unknown_generator():
    with pytest.raises(KeyError):
        trefoil().fox_derivative(TREFOIL_REL, "z")


def fundamental_identity_holds(r: FreeWord, ngen: int) -> bool:
    total = GroupRingElement()
    for j in range(ngen):
        total = total + fox_derivative(r, j) * (GroupRingElement.of(FreeWord.gen(j)) - GR_ONE)
    return total == GroupRingElement.of(r) - GR_ONE


@pytest.mark.parametrize("name", [n for n in CATALOG if n != "unknot"])
def test_fundamental_identity_on_catalog(name):
    P = CATALOG[name].presentation()
    for r in P.relators:
        assert fundamental_identity_holds(r, P.num_generators)


@given(words)
def test_fundamental_identity_on_random_words(w):
    assert fundamental_identity_holds(w, 3)


@given(words, words, st.integers(0, 2))
def test_fox_product_rule(u, v, j):
    assert fox_derivative(u * v, j) == fox_derivative(u, j) + GroupRingElement.of(u) * fox_derivative(v, j)


# -- validation -------------------------------------------------------------------------


def test_validate_examples():
    assert trefoil().validate().ok
    bad = trefoil((1, 2)).validate()
    assert not bad.ok and any("-1" in v for v in bad.violations)
    assert not trefoil((0, 0)).validate().ok


def test_validate_reports_every_violation():
    P = Presentation(("x", "x", "y"), (FreeWord.gen(0) * FreeWord.gen(0), FreeWord.gen(2)), (1, 0, 3))
    assert len(P.validate().violations) == 3
    Q = Presentation(("x", "y"), (), (0, 0))
    assert len(Q.validate().violations) == 1


def test_evaluate_phi():
    P = trefoil()
    assert P.evaluate_phi(IDENTITY) == 0
    assert P.evaluate_phi(x * y) == 2
    assert P.evaluate_phi(TREFOIL_REL) == 0


# -- braids -------------------------------------------------------------------------------


def test_braid_trefoil():
    P = braid_to_presentation(BraidWord(2, (1, 1, 1)))
    assert P.num_generators == 2 and len(P.relators) == 1
    assert classical(P) == T**2 - T + 1


def test_braid_identity_is_unlink():
    P = braid_to_presentation(BraidWord(2, ()))
    assert P.relators == ()
    assert P.num_components == 2


def test_braid_figure_eight():
    assert classical(braid_to_presentation(BraidWord(3, (1, -2, 1, -2)))) == T**2 - 3 * T + 1


def test_braid_rejects_bad_letters():
    with pytest.raises(ValueError):
        BraidWord(2, (2,))
    with pytest.raises(ValueError):
        BraidWord(1, ())
    with pytest.raises(ValueError):
        BraidWord(3, (0,))


@given(st.integers(2, 5), st.data())
def test_artin_letter_and_inverse_cancel(n, data):
    i = data.draw(st.integers(1, n - 1))
    fwd = artin_action(i, n)
    back = artin_action(-i, n)
    for k in range(n):
        w = IDENTITY
        for g, s in fwd[k].letters:
            w = w * (back[g] if s == 1 else back[g].inverse())
        assert w == FreeWord.gen(k)


@given(st.integers(2, 4).flatmap(lambda n: st.tuples(st.just(n), st.lists(st.integers(1, n - 1).flatmap(lambda a: st.sampled_from([a, -a])), max_size=6))))
@settings(max_examples=50)
def test_braid_relators_have_zero_exponent_sum(nw):
    n, word = nw
    P = braid_to_presentation(BraidWord(n, tuple(word)))
    for r in P.relators:
        assert sum(r.exponent_sums(n)) == 0
    assert P.validate().ok


def test_braid_components():
    assert braid_to_presentation(BraidWord(2, (1, 1))).num_components == 2
    assert braid_to_presentation(BraidWord(3, (1, -2, 1, -2))).num_components == 1


# -- connected sums ------------------------------------------------------------------------


def knot(name):
    return CATALOG[name].presentation()


def test_connected_sum_with_unknot():
    P = connected_sum(unknot_presentation(), "x", knot("3_1"), "x1")
    assert classical(P) == T**2 - T + 1


def test_connected_sum_multiplicative():
    d31 = T**2 - T + 1
    d41 = T**2 - 3 * T + 1
    assert classical(connected_sum(knot("3_1"), "x1", knot("3_1"), "x1")) == d31 * d31
    assert classical(connected_sum(knot("3_1"), "x1", knot("4_1"), "x1")) == d31 * d41


def test_connected_sum_renames_and_validates():
    P = connected_sum(knot("3_1"), "x1", knot("3_1"), "x1")
    assert len(set(P.generators)) == P.num_generators == 4
    assert P.validate().ok


def test_connected_sum_phi_mismatch():
    P1 = Presentation(("x",), (), (2,))
    with pytest.raises(ValueError):
        connected_sum(knot("3_1"), "x1", P1, "x")


def test_presentation_json_round_trip():
    P = knot("4_1")
    Q = Presentation.from_json(P.to_json())
    assert (Q.generators, Q.relators, Q.phi, Q.components) == (P.generators, P.relators, P.phi, P.components)
