"""Drinfeld pairing between the e-word and f-word halves, and the graded
pieces L_beta = sum_i u^i (x) v_i of the universal R-matrix.

Orientation of the recursion (fixed so that <e_i, f_j> = -delta_ij/omega_i
and R = (sum L_beta) q^{-H} intertwines Delta with its opposite):

    <x, y1 y2> = <Delta(x), y1 (x) y2>,   <x K, y> = <x, y> <K, 1>,

where K is a t-monomial.  Peeling the first letter f_j off the f-word picks
the coproduct term in which exactly one e_j of x stays in the left slot:

    <x, f_j y'> = sum_{p : x_p = j} q^{(alpha_j, x_1 + ... + x_{p-1})}
                  <e_j, f_j> <x without x_p, y'>.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .algebra import AlgebraSpec, NcExpr, Word, letter_name, parse_word, weight_in
from .matrix import invert_dense, rank_profile
from .scalars import RatFunc, Scalar

DEFAULT_MAX_HEIGHT = 6


def max_beta_height() -> int:
    return int(os.environ.get("QEA_MAX_BETA_HEIGHT", DEFAULT_MAX_HEIGHT))


def _pair_cache(alg: AlgebraSpec) -> dict:
    return alg.cache("pairing")


def pair_e_f_words(alg: AlgebraSpec, ew: Word, fw: Word) -> Scalar:
    """<e-word, f-word>; both given as letter tuples (positive / negative ints)."""
    if any(x < 0 for x in ew) or any(x > 0 for x in fw):
        raise ValueError("pair_e_f_words needs an e-word and an f-word")
    cache = _pair_cache(alg)
    key = (ew, fw)
    hit = cache.get(key)
    if hit is not None:
        return hit
    sp = alg.scalars
    if len(ew) != len(fw) or sorted(ew) != sorted(-x for x in fw):
        out = sp.zero()
    elif not ew:
        out = sp.one()
    else:
        j = -fw[0]
        rest = fw[1:]
        out = sp.zero()
        base = -alg.omega(j).inverse()
        sym = alg.sym
        acc = Fraction(0)
        for p, x in enumerate(ew):
            if x == j:
                vexp = acc * alg.L
                sub = pair_e_f_words(alg, ew[:p] + ew[p + 1:], rest)
                if sub:
                    out = out + (base * sub).mul_vpow(int(vexp))
            acc += sym[j - 1][x - 1]
    cache[key] = out
    return out


def pair_tt(alg: AlgebraSpec, k1, k2) -> Scalar:
    """<t^n, t^m> = q^{-sum_ij n_i m_j d_i a_ij} (scaled exponents k = L*n)."""
    total = Fraction(0)
    for i, a in enumerate(k1):
        for j, b in enumerate(k2):
            if a and b:
                total += a * b * alg.sym[i][j]
    vexp = -total / alg.L
    if vexp.denominator != 1:
        raise ValueError("t-t pairing is not representable")
    return alg.scalars.v(int(vexp))


def pair_words(x: NcExpr, y: NcExpr) -> Scalar:
    """Bilinear pairing of an e-side expression with an f-side expression.

    Terms of ``x`` must be e-words times t-monomials and terms of ``y``
    f-words times t-monomials; weights that differ pair to zero.
    """
    alg = x.alg
    if y.alg is not alg:
        raise ValueError("pairing across different algebras")
    total = alg.scalars.zero()
    for (w1, k1), c1 in x.terms.items():
        if any(l < 0 for l in w1):
            raise ValueError("left argument of the pairing must be built from e's and t's")
        for (w2, k2), c2 in y.terms.items():
            if any(l > 0 for l in w2):
                raise ValueError("right argument of the pairing must be built from f's and t's")
            p = pair_e_f_words(alg, w1, w2)
            if p:
                total = total + c1 * c2 * p * pair_tt(alg, k1, k2)
    return total


# ---------------------------------------------------------------------------
# graded pieces


def words_of_weight(beta: tuple[int, ...]) -> list[Word]:
    """All e-words (as positive letter tuples) with root content beta, lexicographic."""
    letters = []
    for j, m in enumerate(beta, start=1):
        letters += [j] * m
    out: list[Word] = []

    def rec(prefix, remaining):
        if not remaining:
            out.append(tuple(prefix))
            return
        seen = set()
        for idx, x in enumerate(remaining):
            if x in seen:
                continue
            seen.add(x)
            rec(prefix + [x], remaining[:idx] + remaining[idx + 1:])

    rec([], sorted(letters))
    return out


def gram_matrix(alg: AlgebraSpec, beta) -> tuple[list[Word], list[Word], list[list[Scalar]]]:
    """G[j][k] = <e-word_j, f-word_k> over all words of weight beta."""
    beta = tuple(beta)
    if len(beta) != alg.rank or any(m < 0 for m in beta):
        raise ValueError(f"beta {beta} is not in Q+ for {alg.name}")
    ew = words_of_weight(beta)
    fw = [tuple(-x for x in w) for w in ew]
    gram = [[pair_e_f_words(alg, a, b) for b in fw] for a in ew]
    return ew, fw, gram


@dataclass
class DualPairSet:
    beta: tuple[int, ...]
    e_words: list[Word]
    f_words: list[Word]
    gram: list[list[Scalar]]
    rank: int
    rows: list[int]
    cols: list[int]
    terms: list[tuple[NcExpr, NcExpr]]

    def to_json(self) -> dict:
        return {
            "beta": list(self.beta),
            "e_words": [[letter_name(x) for x in w] for w in self.e_words],
            "f_words": [[letter_name(x) for x in w] for w in self.f_words],
            "gram": [[c.to_json() for c in row] for row in self.gram],
            "rank": self.rank,
            "terms": [{"u": u.to_json(), "v": v.to_json()} for u, v in self.terms],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _clear_denominators(gram: list[list[Scalar]]) -> list[list[RatFunc]]:
    """Scale each row by the lcm of its denominators (rank is unchanged)."""
    out = []
    for row in gram:
        den = None
        for c in row:
            if c:
                d = RatFunc.make(c.a.den)
                if den is None:
                    den = d
                else:
                    g = RatFunc.make(den.num.gcd(d.num))
                    den = den * d / g
        out.append([c.a * den if den is not None else c.a for c in row])
    return out


def dual_pair_basis(alg: AlgebraSpec, beta) -> DualPairSet:
    """Dual bases of the weight-beta pieces modulo the pairing radical.

    The v_i are single f-words (pivot columns); all Gram-inverse
    coefficients go into u^i.
    """
    beta = tuple(beta)
    cache = alg.cache("dual_pair_basis")
    if beta in cache:
        return cache[beta]
    ew, fw, gram = gram_matrix(alg, beta)
    if any(c.b is not None for row in gram for c in row):
        raise ArithmeticError("pairing values must lie in Q(v)")
    rows, cols = rank_profile(_clear_denominators(gram), size=lambda x: x.degree_span())
    sp = alg.scalars
    sub = [[gram[j][k] for k in cols] for j in rows]
    inv = invert_dense(sub, sp.one()) if rows else []
    terms = []
    z = alg.zero_texp()
    for i, k in enumerate(cols):
        u = NcExpr(alg, {})
        for jj, j in enumerate(rows):
            c = inv[i][jj]
            if c:
                u = u + NcExpr(alg, {(ew[j], z): c})
        terms.append((u, NcExpr(alg, {(fw[k], z): sp.one()})))
    out = DualPairSet(beta, ew, fw, gram, len(rows), rows, cols, terms)
    cache[beta] = out
    return out


def betas_up_to(alg: AlgebraSpec, max_height: int) -> list[tuple[int, ...]]:
    out = [b for b in product(range(max_height + 1), repeat=alg.rank) if sum(b) <= max_height]
    return sorted(out, key=lambda b: (sum(b), b))


def truncated_r_terms(alg: AlgebraSpec, max_height: int) -> list[DualPairSet]:
    """All L_beta with height(beta) <= max_height."""
    if max_height < 0:
        raise ValueError("height bound must be >= 0")
    return [dual_pair_basis(alg, b) for b in betas_up_to(alg, max_height)]


def reconstruction_residuals(dps: DualPairSet) -> list[tuple[int, int]]:
    """Index pairs where sum_i <w_j, v_i><u^i, wbar_k> differs from G[j][k]."""
    alg = dps.terms[0][0].alg if dps.terms else None
    bad = []
    for j, a in enumerate(dps.e_words):
        for k, b in enumerate(dps.f_words):
            if alg is None:
                ok = dps.gram[j][k].is_zero()
            else:
                total = alg.scalars.zero()
                for u, v in dps.terms:
                    (vw,) = v.words()
                    left = pair_e_f_words(alg, a, vw)
                    if left:
                        right = pair_words(u, NcExpr(alg, {(b, alg.zero_texp()): alg.scalars.one()}))
                        total = total + left * right
                ok = total == dps.gram[j][k]
            if not ok:
                bad.append((j, k))
    return bad


def radical_defects(x: NcExpr) -> list[Word]:
    """Opposite-kind words of matching weight that pair nontrivially with ``x``."""
    alg = x.alg
    words = x.words()
    if not words:
        return []
    f_side = any(l < 0 for w in words for l in w)
    if f_side and any(l > 0 for w in words for l in w):
        raise ValueError("radical check needs a pure e- or pure f-expression")
    bad = []
    one = alg.scalars.one()
    z = alg.zero_texp()
    for beta in sorted({weight_in(alg, w) for w in words}):
        for ew in words_of_weight(beta):
            if f_side:
                val = pair_words(NcExpr(alg, {(ew, z): one}), x)
                tag = ew
            else:
                tag = tuple(-l for l in ew)
                val = pair_words(x, NcExpr(alg, {(tag, z): one}))
            if not val.is_zero():
                bad.append(tag)
    return bad


def serre_ideal_elements(alg: AlgebraSpec, max_height: int, kind: str = "e"):
    """(label, w1 * S * w2) for Serre elements S and words w1, w2 with total height <= max_height."""
    from .algebra import serre_element

    sign = 1 if kind == "e" else -1
    out = []
    for i in range(1, alg.rank + 1):
        for j in range(1, alg.rank + 1):
            if i == j:
                continue
            S = serre_element(alg, i, j, kind)
            h = 2 - alg.cartan[i - 1][j - 1]
            room = max_height - h
            for n1 in range(room + 1):
                for n2 in range(room - n1 + 1):
                    for w1 in product(range(1, alg.rank + 1), repeat=n1):
                        for w2 in product(range(1, alg.rank + 1), repeat=n2):
                            x = alg.word([sign * l for l in w1]) * S * alg.word([sign * l for l in w2])
                            out.append((f"{w1}.S{kind}({i},{j}).{w2}", x))
    return out


def parse_beta(text: str) -> tuple[int, ...]:
    return tuple(int(x) for x in text.split(","))


__all__ = [
    "DualPairSet",
    "pair_words",
    "pair_e_f_words",
    "pair_tt",
    "gram_matrix",
    "dual_pair_basis",
    "truncated_r_terms",
    "betas_up_to",
    "words_of_weight",
    "reconstruction_residuals",
    "radical_defects",
    "serre_ideal_elements",
    "max_beta_height",
    "parse_word",
]
