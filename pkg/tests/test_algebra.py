import pytest
from hypothesis import given, settings, strategies as st

from qea.algebra import (
    TensorExpr,
    a_n,
    algebra_from_name,
    antipode,
    coproduct,
    counit,
    g2,
    nc_multiply,
    serre_element,
    weight_of,
)
from qea.scalars import SpecMismatchError, qbinom


def test_t_commutes_past_e_with_q_power():
    A1 = a_n(1)
    assert A1.t(1) * A1.e(1) == (A1.e(1) * A1.t(1)).scale(A1.q(2))
    G = g2()
    # a_12 = -1 in base q_1 = q
    assert G.t(1) * G.e(2) == (G.e(2) * G.t(1)).scale(G.q(-1))
    # a_21 = -3 in base q_2 = q^(1/3)
    assert G.t(2) * G.e(1) == (G.e(1) * G.t(2)).scale(G.q(-1))


def test_t_commutes_past_f_with_inverse_power():
    A2 = a_n(2)
    assert A2.t(1) * A2.f(2) == (A2.f(2) * A2.t(1)).scale(A2.q(1))


def test_fractional_t_powers():
    A2 = a_n(2)
    x = A2.t(1, "1/3") * A2.e(1)
    assert x == (A2.e(1) * A2.t(1, "1/3")).scale(A2.q("2/3"))
    with pytest.raises(ValueError):
        A2.t(1, "1/2")
    G = g2()
    with pytest.raises(ValueError):
        G.t(2, "1/3") * G.f(2)


def test_coproduct_of_e1e2():
    A2 = a_n(2)
    e1, e2, t1, t2, one = A2.e(1), A2.e(2), A2.t(1), A2.t(2), A2.one()
    want = (
        TensorExpr.pure(e1 * e2, one)
        + TensorExpr.pure(e1 * t2, e2)
        + TensorExpr.pure(t1 * e2, e1)
        + TensorExpr.pure(t1 * t2, e1 * e2)
    )
    assert coproduct(e1 * e2) == want


def test_coproduct_of_generators():
    G = g2()
    assert coproduct(G.f(2)) == TensorExpr.pure(G.f(2), G.t(2, -1)) + TensorExpr.pure(G.one(), G.f(2))
    assert coproduct(G.t(1)) == TensorExpr.pure(G.t(1), G.t(1))


def test_antipode_of_generators():
    A1 = a_n(1)
    e, f, t = A1.e(1), A1.f(1), A1.t(1)
    assert antipode(e) == -(A1.t(1, -1) * e)
    assert antipode(f) == -(f * t)
    assert antipode(t) == A1.t(1, -1)
    assert antipode(antipode(e, inverse=True)) == e


def test_counit_values():
    A2 = a_n(2)
    assert counit(A2.e(1)).is_zero()
    assert counit(A2.t(2, 3)) == A2.scalars.one()
    assert counit(A2.one().scale(A2.q(2)) + A2.f(1)) == A2.q(2)


def test_weight_of():
    assert weight_of(["e1", "e2", "e1"]) == (2, 1)
    assert weight_of([-2, -2]) == (0, 2)
    assert weight_of([], rank=2) == (0, 0)
    with pytest.raises(ValueError):
        weight_of(["e1", "f1"])


def test_serre_element_a2():
    A2 = a_n(2)
    e1, e2 = A2.e(1), A2.e(2)
    two = qbinom(2, 1, 1, A2.scalars)
    want = e1 * e1 * e2 - (e1 * e2 * e1).scale(two) + e2 * e1 * e1
    assert serre_element(A2, 1, 2) == want


def test_serre_element_g2_has_five_terms():
    G = g2()
    x = serre_element(G, 2, 1)
    assert len(x) == 5
    assert len(serre_element(G, 1, 2, "f")) == 3


def test_serre_element_bad_input():
    with pytest.raises(ValueError):
        serre_element(a_n(2), 1, 1)
    with pytest.raises(ValueError):
        serre_element(a_n(2), 1, 2, "x")


def test_algebra_from_name():
    assert algebra_from_name("a2") is a_n(2)
    assert algebra_from_name("aN:3") is a_n(3)
    assert algebra_from_name("G2") is g2()
    with pytest.raises(ValueError):
        algebra_from_name("b2")


def test_mixing_algebras_raises():
    with pytest.raises(SpecMismatchError):
        nc_multiply(a_n(1).e(1), a_n(2).e(1))


def test_json_round_trip():
    G = g2()
    x = (G.e(1) * G.t(2, -1) * G.f(2)).scale(G.scalars.s()) + G.one()
    from qea.algebra import NcExpr

    assert NcExpr.from_json(x.to_json(), G) == x


# -- properties over short mixed words ---------------------------------------


def _letters(rank):
    return st.sampled_from([j for i in range(1, rank + 1) for j in (i, -i)])


@st.composite
def elements(draw, alg):
    """Small sums of word*t-monomial terms."""
    out = alg.zero()
    for _ in range(draw(st.integers(1, 2))):
        w = draw(st.lists(_letters(alg.rank), max_size=4))
        t = [draw(st.integers(-1, 1)) for _ in range(alg.rank)]
        c = alg.scalars.v(draw(st.integers(-2, 2))) * draw(st.sampled_from([1, -1, 2]))
        out = out + (alg.word(w) * alg.tmono(t)).scale(c)
    return out


ALGS = st.sampled_from([a_n(1), a_n(2), g2()])


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_coassociativity(data):
    alg = data.draw(ALGS)
    x = data.draw(elements(alg))
    d = coproduct(x)
    assert d.apply_slot(0, coproduct) == d.apply_slot(1, coproduct)


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_counit_axiom(data):
    alg = data.draw(ALGS)
    x = data.draw(elements(alg))
    d = coproduct(x)
    assert d.apply_slot(0, counit).as_expr() == x
    assert d.apply_slot(1, counit).as_expr() == x


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_antipode_axiom(data):
    alg = data.draw(ALGS)
    x = data.draw(elements(alg))
    d = coproduct(x)
    unit = alg.const(counit(x))
    assert d.apply_slot(0, antipode).multiply_out() == unit
    assert d.apply_slot(1, antipode).multiply_out() == unit


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_antipode_inverse_and_anti_homomorphism(data):
    alg = data.draw(ALGS)
    x, y = data.draw(elements(alg)), data.draw(elements(alg))
    assert antipode(antipode(x), inverse=True) == x
    assert antipode(antipode(x, inverse=True)) == x
    assert antipode(x * y) == antipode(y) * antipode(x)


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_coproduct_is_multiplicative(data):
    alg = data.draw(ALGS)
    x, y = data.draw(elements(alg)), data.draw(elements(alg))
    assert coproduct(x * y) == coproduct(x) * coproduct(y)


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_associativity(data):
    alg = data.draw(ALGS)
    x, y, z = (data.draw(elements(alg)) for _ in range(3))
    assert (x * y) * z == x * (y * z)
