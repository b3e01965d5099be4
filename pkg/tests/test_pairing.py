from functools import lru_cache

import pytest
from hypothesis import given, settings, strategies as st

from qea.algebra import NcExpr, a_n, coproduct, g2
from qea.matrix import invert_dense, rank_profile
from qea.pairing import (
    _clear_denominators,
    betas_up_to,
    dual_pair_basis,
    gram_matrix,
    pair_e_f_words,
    pair_tt,
    pair_words,
    parse_beta,
    radical_defects,
    reconstruction_residuals,
    serre_ideal_elements,
    truncated_r_terms,
    words_of_weight,
)
from qea.reps import minimal_rep

POSITIVE_ROOTS = {
    "A1": [(1,)],
    "A2": [(1, 0), (0, 1), (1, 1)],
    "A3": [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (0, 1, 1), (1, 1, 1)],
    "G2": [(1, 0), (0, 1), (1, 1), (1, 2), (1, 3), (2, 3)],
}


def kostant(roots, beta):
    """Number of ways to write beta as a multiset of positive roots."""

    @lru_cache(maxsize=None)
    def count(b, k):
        if not any(b):
            return 1
        if k == len(roots):
            return 0
        total = 0
        r = roots[k]
        cur = b
        while all(x >= 0 for x in cur):
            total += count(cur, k + 1)
            cur = tuple(x - y for x, y in zip(cur, r))
        return total

    return count(tuple(beta), 0)


def test_gram_at_zero_and_simple_root():
    A2 = a_n(2)
    assert gram_matrix(A2, (0, 0))[2] == [[A2.scalars.one()]]
    assert gram_matrix(A2, (1, 0))[2] == [[-A2.omega(1).inverse()]]
    G = g2()
    assert gram_matrix(G, (0, 1))[2] == [[-G.omega(2).inverse()]]


def test_pair_simple_generators():
    G = g2()
    assert pair_words(G.e(1), G.f(1)) == -G.omega(1).inverse()
    assert pair_words(G.e(1), G.f(2)).is_zero()


def test_pair_tt_values():
    A1 = a_n(1)
    k = A1.scale_texp([1])
    assert pair_tt(A1, k, k) == A1.q(-2)
    G = g2()
    k1, k2 = G.scale_texp([1, 0]), G.scale_texp([0, 1])
    assert pair_tt(G, k1, k2) == G.q(1)  # d_1 a_12 = -1


def test_pair_words_rejects_mixed_arguments():
    A2 = a_n(2)
    with pytest.raises(ValueError):
        pair_words(A2.f(1), A2.f(1))
    with pytest.raises(ValueError):
        pair_words(A2.e(1), A2.e(1))


def test_grading_different_weights_pair_to_zero():
    G = g2()
    assert pair_e_f_words(G, (1, 2), (-2, -2)).is_zero()
    assert pair_e_f_words(G, (1, 2, 2), (-2, -1)).is_zero()


def test_words_of_weight_counts():
    assert len(words_of_weight((1, 1))) == 2
    assert len(words_of_weight((2, 3))) == 10
    assert words_of_weight((0, 0)) == [()]


@pytest.mark.parametrize(
    "alg,beta",
    [(a_n(2), (1, 1)), (a_n(2), (2, 1)), (a_n(2), (2, 2)), (a_n(3), (1, 1, 1)), (a_n(3), (1, 2, 1)),
     (g2(), (1, 2)), (g2(), (1, 4)), (g2(), (2, 3)), (g2(), (2, 4))],
    ids=str,
)
def test_rank_matches_kostant_partition_count(alg, beta):
    dps = dual_pair_basis(alg, beta)
    assert dps.rank == kostant(POSITIVE_ROOTS[alg.name], beta)


@pytest.mark.parametrize(
    "alg,beta",
    [(a_n(1), (2,)), (a_n(2), (1, 1)), (a_n(2), (2, 1)), (a_n(3), (1, 1, 1)), (g2(), (1, 3)), (g2(), (2, 3))],
    ids=str,
)
def test_dual_bases_reconstruct_the_gram_matrix(alg, beta):
    assert reconstruction_residuals(dual_pair_basis(alg, beta)) == []


def test_dual_basis_is_biorthogonal():
    G = g2()
    dps = dual_pair_basis(G, (1, 3))
    for i, (u, _) in enumerate(dps.terms):
        for k, (_, v) in enumerate(dps.terms):
            want = G.scalars.one() if i == k else G.scalars.zero()
            assert pair_words(u, v) == want


def test_truncation_bounds():
    A1 = a_n(1)
    assert [d.beta for d in truncated_r_terms(A1, 0)] == [(0,)]
    zero = truncated_r_terms(A1, 0)[0]
    assert zero.terms[0][0] == A1.one() and zero.terms[0][1] == A1.one()
    assert [d.beta for d in truncated_r_terms(a_n(2), 1)] == [(0, 0), (0, 1), (1, 0)]
    assert [d.beta for d in truncated_r_terms(A1, 2)] == [(0,), (1,), (2,)]
    with pytest.raises(ValueError):
        truncated_r_terms(A1, -1)


def test_betas_up_to_g2():
    assert len(betas_up_to(g2(), 6)) == 28


def test_parse_beta():
    assert parse_beta("2,3") == (2, 3)


def test_json_output_is_deterministic():
    G = g2()
    assert dual_pair_basis(G, (1, 2)).dumps() == dual_pair_basis(G, (1, 2)).dumps()


@pytest.mark.parametrize("alg", [a_n(2), g2()], ids=lambda a: a.name)
def test_serre_elements_lie_in_radical(alg):
    for kind in ("e", "f"):
        for label, x in serre_ideal_elements(alg, 5, kind):
            assert radical_defects(x) == [], label


def test_non_serre_element_is_not_in_radical():
    A2 = a_n(2)
    assert radical_defects(A2.e(1) * A2.e(2)) != []
    with pytest.raises(ValueError):
        radical_defects(A2.e(1) * A2.f(2))


# -- independent oracles --------------------------------------------------


def _oracle(alg, ew, fw):
    """<x, y1 y2> = <Delta(x), y1 (x) y2>, with Delta taken from the Hopf structure.

    Splits the f-word in the middle rather than peeling its first letter.
    """
    if len(ew) != len(fw):
        return alg.scalars.zero()
    if not ew:
        return alg.scalars.one()
    if len(ew) == 1:
        return -alg.omega(ew[0]).inverse() if ew[0] == -fw[0] else alg.scalars.zero()
    cut = len(fw) // 2
    y1, y2 = fw[:cut], fw[cut:]
    total = alg.scalars.zero()
    for ((w1, _), (w2, _)), c in coproduct(alg.word(ew)).terms.items():
        # <x K, y> = <x, y> when y carries no t
        if len(w1) == len(y1):
            total = total + c * _oracle(alg, w1, y1) * _oracle(alg, w2, y2)
    return total


def _derivation_route(alg, ew, fw, cut):
    """<x1 x2, y> = <x2 (x) x1, Delta(y)>."""
    x1, x2 = ew[:cut], ew[cut:]
    total = alg.scalars.zero()
    for ((w1, _), (w2, _)), c in coproduct(alg.word(fw)).terms.items():
        total = total + c * pair_e_f_words(alg, x2, w1) * pair_e_f_words(alg, x1, w2)
    return total


@st.composite
def word_pairs(draw):
    alg = draw(st.sampled_from([a_n(2), a_n(3), g2()]))
    n = draw(st.integers(1, 5))
    ew = tuple(draw(st.lists(st.integers(1, alg.rank), min_size=n, max_size=n)))
    fw = tuple(-x for x in draw(st.permutations(ew)))
    return alg, ew, fw


@settings(max_examples=60, deadline=None)
@given(word_pairs())
def test_pairing_matches_coproduct_oracle(case):
    alg, ew, fw = case
    assert pair_e_f_words(alg, ew, fw) == _oracle(alg, ew, fw)


@settings(max_examples=60, deadline=None)
@given(word_pairs(), st.integers(1, 4))
def test_pairing_matches_derivation_route(case, cut):
    alg, ew, fw = case
    cut = min(cut, len(ew))
    assert pair_e_f_words(alg, ew, fw) == _derivation_route(alg, ew, fw, cut)


def _alternative_terms(alg, beta):
    """Dual bases from the opposite pivot preference (largest degree first)."""
    ew, fw, gram = gram_matrix(alg, beta)
    rows, cols = rank_profile(_clear_denominators(gram), size=lambda x: -x.degree_span())
    sub = [[gram[j][k] for k in cols] for j in rows]
    inv = invert_dense(sub, alg.scalars.one())
    z = alg.zero_texp()
    out = []
    for i, k in enumerate(cols):
        u = NcExpr(alg, {(ew[j], z): inv[i][jj] for jj, j in enumerate(rows) if inv[i][jj]})
        out.append((u, NcExpr(alg, {(fw[k], z): alg.scalars.one()})), )
    return out, (rows, cols)


def _canonical_image(rep, terms):
    total = None
    for u, v in terms:
        m = rep.evaluate(u).kron(rep.evaluate(v))
        total = m if total is None else total + m
    return total


@pytest.mark.parametrize(
    "alg,beta",
    [(a_n(2), (1, 1)), (a_n(3), (1, 1, 1)), (g2(), (1, 2)), (g2(), (1, 3)), (g2(), (2, 3))],
    ids=str,
)
def test_canonical_element_independent_of_pivots(alg, beta):
    rep = minimal_rep(alg)
    dps = dual_pair_basis(alg, beta)
    alt, pivots = _alternative_terms(alg, beta)
    assert len(alt) == dps.rank
    if dps.rank < len(dps.e_words):
        assert sorted(pivots[1]) != sorted(dps.cols)
    a = _canonical_image(rep, dps.terms)
    b = _canonical_image(rep, alt)
    assert (a - b).is_zero()
