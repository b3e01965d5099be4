"""Closed-form L-operator tables for the minimal representations.

G2 entries are written in a small coefficient notation so that the same
source renders both the exact Scalar and a LaTeX string.  A coefficient is
a space-separated product of tokens:

    -            overall sign
    w1, w2       omega_1 = q - q^-1, omega_2 = q2 - q2^-1
    q, q2        q = v^3 and q2 = v
    s            [2]^(1/2)
    [m]          q-number in base q2
    ([4]-q2), ([4]-q2^-1), ([4][2]-1)

each optionally raised to an integer power, e.g. ``q2^-2`` or ``[6]^-1``.
Words are written as ``e1 e2^2 e1``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .algebra import AlgebraSpec, NcExpr, a_n, g2, monomial
from .lops import LMatrix, e_nonsimple
from .scalars import Scalar, qnum

_TOKEN = re.compile(r"^(\([^)]*\)|w1|w2|q2|q|s|\[\d+\])(?:\^(-?\d+))?$")
_COMPOSITES = ("([4]-q2)", "([4]-q2^-1)", "([4][2]-1)")


# ---------------------------------------------------------------------------
# coefficient notation


@dataclass(frozen=True)
class Coef:
    sign: int
    atoms: tuple  # ((name, power), ...)

    @staticmethod
    def parse(text: str) -> "Coef":
        sign = 1
        atoms = []
        for tok in text.split():
            if tok == "-":
                sign = -sign
                continue
            m = _TOKEN.match(tok)
            if m is None or (m.group(1).startswith("(") and m.group(1) not in _COMPOSITES):
                raise ValueError(f"bad coefficient token {tok!r}")
            atoms.append((m.group(1), int(m.group(2) or 1)))
        return Coef(sign, tuple(atoms))

    def scalar(self, alg: AlgebraSpec) -> Scalar:
        out = alg.scalars.const(self.sign)
        for name, p in self.atoms:
            out = out * _atom_value(alg, name) ** p
        return out

    def bar(self) -> "Coef":
        """q -> q^-1 on the notation (omega_j -> -omega_j)."""
        sign = self.sign
        atoms = []
        for name, p in self.atoms:
            if name in ("w1", "w2"):
                sign *= (-1) ** (p % 2)
                atoms.append((name, p))
            elif name in ("q", "q2"):
                atoms.append((name, -p))
            elif name == "([4]-q2)":
                atoms.append(("([4]-q2^-1)", p))
            elif name == "([4]-q2^-1)":
                atoms.append(("([4]-q2)", p))
            else:
                atoms.append((name, p))
        return Coef(sign, tuple(atoms))

    def latex(self, grouped: bool = False) -> str:
        """Prefactor style writes x^{-k}; grouped style collects q-number quotients."""
        if grouped:
            num = [(n, p) for n, p in self.atoms if not (_is_qnum(n) and p < 0)]
            den = [(n, -p) for n, p in self.atoms if _is_qnum(n) and p < 0]
            if den:
                qn = [(n, p) for n, p in num if _is_qnum(n)]
                rest = [(n, p) for n, p in num if not _is_qnum(n)]
                frac = "(" + ("".join(_atom_latex(n, p) for n, p in qn) or "1") + "/" + "".join(
                    _atom_latex(n, p) for n, p in den) + ")"
                body = "".join(_atom_latex(n, p) for n, p in rest) + frac
                return ("-" if self.sign < 0 else "") + body
        body = "".join(_atom_latex(n, p) for n, p in self.atoms)
        return ("-" if self.sign < 0 else "") + body


def _is_qnum(name: str) -> bool:
    return name.startswith("[")


def _atom_value(alg: AlgebraSpec, name: str) -> Scalar:
    sp = alg.scalars
    d2 = Fraction(1, alg.L)  # base q2 = v

    def qn(m):
        return qnum(m, d2, sp)

    if name == "w1":
        return alg.omega(1)
    if name == "w2":
        return alg.omega(2)
    if name == "q":
        return alg.q(1)
    if name == "q2":
        return sp.v(1)
    if name == "s":
        return sp.s()
    if name == "([4]-q2)":
        return qn(4) - sp.v(1)
    if name == "([4]-q2^-1)":
        return qn(4) - sp.v(-1)
    if name == "([4][2]-1)":
        return qn(4) * qn(2) - sp.one()
    return qn(int(name[1:-1]))


def _atom_latex(name: str, p: int) -> str:
    if name == "s":
        return "[2]^{1/2}" if p == 1 else f"[2]^{{{Fraction(p, 2)}}}"
    base = {
        "w1": "\\omega_{1}",
        "w2": "\\omega_{2}",
        "q": "q",
        "q2": "q_{2}",
        "([4]-q2)": "([4]-q_{2})",
        "([4]-q2^-1)": "([4]-q_{2}^{-1})",
        "([4][2]-1)": "([4][2]-1)",
    }.get(name, name)
    return base if p == 1 else f"{base}^{{{p}}}"


def parse_letters(text: str) -> tuple[int, ...]:
    out = []
    for tok in text.split():
        m = re.match(r"^([ef])(\d+)(?:\^(\d+))?$", tok)
        if m is None:
            raise ValueError(f"bad word token {tok!r}")
        j = int(m.group(2))
        out += [j if m.group(1) == "e" else -j] * int(m.group(3) or 1)
    return tuple(out)


def _word_latex(word: tuple[int, ...]) -> str:
    parts = []
    i = 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        x = word[i]
        sym = f"{'e' if x > 0 else 'f'}_{{{abs(x)}}}"
        parts.append(sym if j - i == 1 else f"{sym}^{{{j - i}}}")
        i = j
    return "".join(parts)


def _tmono_latex(texp) -> str:
    parts = []
    for j, k in enumerate(texp, start=1):
        k = Fraction(k)
        if k == 0:
            continue
        parts.append(f"t_{{{j}}}" if k == 1 else f"t_{{{j}}}^{{{k}}}")
    return "".join(parts)


@dataclass(frozen=True)
class CatalogEntry:
    """prefactor * (sum_k coef_k word_k) * t-monomial, or the mirrored order for L+."""

    prefactor: Coef
    terms: tuple  # ((Coef, word), ...)
    texp: tuple  # unscaled t exponents
    t_left: bool = False

    @staticmethod
    def make(prefactor: str, terms, texp, t_left: bool = False) -> "CatalogEntry":
        return CatalogEntry(
            Coef.parse(prefactor),
            tuple((Coef.parse(c), parse_letters(w)) for c, w in terms),
            tuple(Fraction(x) for x in texp),
            t_left,
        )

    def expr(self, alg: AlgebraSpec) -> NcExpr:
        body = alg.zero()
        for c, w in self.terms:
            body = body + alg.word(w).scale(c.scalar(alg))
        t = alg.tmono(self.texp)
        x = t * body if self.t_left else body * t
        return x.scale(self.prefactor.scalar(alg))

    def transformed(self) -> "CatalogEntry":
        """Notation-level image under q -> q^-1, e <-> f, t -> t^-1, reversed products."""
        terms = tuple((c.bar(), tuple(-x for x in reversed(w))) for c, w in self.terms)
        return CatalogEntry(self.prefactor.bar(), terms, tuple(-x for x in self.texp), not self.t_left)

    def latex(self) -> str:
        pre = self.prefactor.latex()
        t = _tmono_latex(self.texp)
        if len(self.terms) == 1:
            c, w = self.terms[0]
            head = Coef(self.prefactor.sign * c.sign, self.prefactor.atoms + c.atoms).latex()
            body = _word_latex(w)
            out = head + (t + body if self.t_left else body + t)
            return {"": "1", "-": "-1"}.get(out, out)
        inner = []
        for k, (c, w) in enumerate(self.terms):
            coef = c.latex(grouped=True)
            sign = "-" if coef.startswith("-") else "+"
            coef = coef.lstrip("-")
            piece = coef + _word_latex(w)
            inner.append(("-" if sign == "-" else "") + piece if k == 0 else f"{sign}{piece}")
        braces = "\\left\\{" + "".join(inner) + "\\right\\}"
        return pre + (t + braces if self.t_left else braces + t)


def _entry(prefactor, terms, texp):
    return CatalogEntry.make(prefactor, terms, texp)


def _single(prefactor, word, texp):
    return CatalogEntry.make(prefactor, [("", word)], texp)


_BRACKET_41 = [("", "e1 e2^2"), ("- [6] [3]^-1", "e2 e1 e2"), ("", "e2^2 e1")]

# L-^a_b for a >= b, 1-based; t exponents are (t1, t2).
G2_MINUS: dict[tuple[int, int], CatalogEntry] = {
    (1, 1): _single("", "", (-1, -2)),
    (2, 2): _single("", "", (-1, -1)),
    (3, 3): _single("", "", (0, -1)),
    (4, 4): _single("", "", (0, 0)),
    (5, 5): _single("", "", (0, 1)),
    (6, 6): _single("", "", (1, 1)),
    (7, 7): _single("", "", (1, 2)),
    (2, 1): _single("- w2", "e2", (-1, -2)),
    (3, 2): _single("- w1", "e1", (-1, -1)),
    (4, 3): _single("- w2 s", "e2", (0, -1)),
    (5, 4): _single("- w2 s", "e2", (0, 0)),
    (6, 5): _single("- w1", "e1", (0, 1)),
    (7, 6): _single("- w2", "e2", (1, 1)),
    (3, 1): _entry("w2", [("q", "e1 e2"), ("-", "e2 e1")], (-1, -2)),
    (4, 2): _entry("- w2 s", [("", "e1 e2"), ("- q", "e2 e1")], (-1, -1)),
    (5, 3): _single("w2^2 q2^-1", "e2^2", (0, -1)),
    (6, 4): _entry("w2 s", [("q", "e1 e2"), ("-", "e2 e1")], (0, 0)),
    (7, 5): _entry("- w2", [("", "e1 e2"), ("- q", "e2 e1")], (0, 1)),
    (4, 1): _entry("w2 q2^2 s^-1", _BRACKET_41, (-1, -2)),
    (5, 2): _entry(
        "- w2 [2]^-1",
        [("", "e1 e2^2"), ("- q2^2 [2]", "e2 e1 e2"), ("q2^4", "e2^2 e1")],
        (-1, -1),
    ),
    (6, 3): _entry(
        "- w2 [2]^-1",
        [("q2^4", "e1 e2^2"), ("- q2^2 [2]", "e2 e1 e2"), ("", "e2^2 e1")],
        (0, -1),
    ),
    (7, 4): _entry("w2 q2^2 s^-1", _BRACKET_41, (0, 0)),
    (5, 1): _entry(
        "w2 q2 [2]^-1",
        [
            ("", "e1 e2^3"),
            ("- ([4]-q2^-1)", "e2 e1 e2^2"),
            ("q2 ([4]-q2)", "e2^2 e1 e2"),
            ("- q2", "e2^3 e1"),
        ],
        (-1, -2),
    ),
    (6, 2): _entry(
        "- w1 w2 q2^2 [6]^-1",
        [
            ("", "e1^2 e2^2"),
            ("[3]", "e2 e1^2 e2"),
            ("- [6] [5] [3]^-1 [2]^-1", "e1 e2^2 e1"),
            ("", "e2^2 e1^2"),
        ],
        (-1, -1),
    ),
    (7, 3): _entry(
        "- w2 q2 [2]^-1",
        [
            ("q2", "e1 e2^3"),
            ("- q2 ([4]-q2)", "e2 e1 e2^2"),
            ("([4]-q2^-1)", "e2^2 e1 e2"),
            ("-", "e2^3 e1"),
        ],
        (0, -1),
    ),
    (6, 1): _entry(
        "w1 q [6]^-1 [2]^-1",
        [
            ("q2^2", "e1^2 e2^3"),
            ("q2^-2", "e2^3 e1^2"),
            ("q2 ([4]-q2^-1)", "e2 e1^2 e2^2"),
            ("q2^-1 ([4]-q2)", "e2^2 e1^2 e2"),
            ("- q2^2 ([4]-q2) [6] [3]^-1", "e1 e2^2 e1 e2"),
            ("- q2^-2 ([4]-q2^-1) [6] [3]^-1", "e2 e1 e2^2 e1"),
            ("[6] [4] [3]^-1 [2]^-1", "e1 e2^3 e1"),
        ],
        (-1, -2),
    ),
    (7, 2): _entry(
        "w1 q [6]^-1 [2]^-1",
        [
            ("q2^-2", "e1^2 e2^3"),
            ("q2^2", "e2^3 e1^2"),
            ("q2^-1 ([4]-q2)", "e2 e1^2 e2^2"),
            ("q2 ([4]-q2^-1)", "e2^2 e1^2 e2"),
            ("- q2^-2 ([4]-q2^-1) [6] [3]^-1", "e1 e2^2 e1 e2"),
            ("- q2^2 ([4]-q2) [6] [3]^-1", "e2 e1 e2^2 e1"),
            ("[6] [4] [3]^-1 [2]^-1", "e1 e2^3 e1"),
        ],
        (-1, -1),
    ),
    (7, 1): _entry(
        "w1 w2 q [6]^-1 [2]^-1",
        [
            ("[6] [4]^2 [3]^-1 [2]^-1", "e2 e1 e2^2 e1 e2"),
            ("- [6] [3]^-1 [2]^-1", "e1 e2^4 e1"),
            ("- ([4][2]-1)", "e2^2 e1^2 e2^2"),
            ("", "e2^4 e1^2"),
            ("", "e1^2 e2^4"),
            ("- [6] [5] [3]^-1 [2]^-1", "e1 e2^2 e1 e2^2"),
            ("- [6] [5] [3]^-1 [2]^-1", "e2^2 e1 e2^2 e1"),
        ],
        (-1, -2),
    ),
}

# the one L+ entry displayed explicitly alongside the transformation rule
G2_PLUS_DISPLAYED: dict[tuple[int, int], CatalogEntry] = {
    (1, 4): CatalogEntry.make(
        "- w2 q2^-2 s^-1",
        [("", "f2^2 f1"), ("- [6] [3]^-1", "f2 f1 f2"), ("", "f1 f2^2")],
        (1, 2),
        t_left=True,
    ),
}


def g2_entry(kind: str, a: int, b: int) -> CatalogEntry | None:
    if not (1 <= a <= 7 and 1 <= b <= 7):
        raise ValueError("G2 minimal representation indices run over 1..7")
    if kind == "minus":
        return G2_MINUS.get((a, b))
    if kind == "plus":
        src = G2_MINUS.get((b, a))
        return None if src is None else src.transformed()
    raise ValueError(f"kind must be 'minus' or 'plus', got {kind!r}")


def catalog_g2(kind: str, a: int, b: int) -> NcExpr:
    alg = g2()
    if kind == "plus":
        src = g2_entry("minus", b, a)
        return alg.zero() if src is None else minus_to_plus_transform(src.expr(alg))
    entry = g2_entry(kind, a, b)
    return alg.zero() if entry is None else entry.expr(alg)


# ---------------------------------------------------------------------------
# the transformation rule


def minus_to_plus_transform(x: NcExpr) -> NcExpr:
    """v -> 1/v on coefficients (s fixed), e_j <-> f_j, t -> t^-1, products reversed."""
    alg = x.alg
    out = alg.zero()
    z = alg.zero_texp()
    for (w, k), c in x.terms.items():
        t = monomial(alg, (tuple(), tuple(-y for y in k)))
        word = monomial(alg, (tuple(-y for y in reversed(w)), z))
        out = out + (t * word).scale(c.bar())
    return out


# ---------------------------------------------------------------------------
# A_N tables


def _an_diag_texp(N: int, b: int, sign: int) -> tuple[Fraction, ...]:
    """prod_j t_j^{j/(N+1)} prod_{k>=b} t_k^-1, or its inverse for sign=-1."""
    return tuple(sign * (Fraction(j, N + 1) - (1 if j >= b else 0)) for j in range(1, N + 1))


def an_sign(kind: str, a: int, b: int, variant: str) -> int:
    """Sign in front of omega E for the off-diagonal entries.

    ``printed`` follows the closed forms as published; ``derived`` is the
    sign that the pairing pipeline produces (constant -1 for L-, +1 for L+).
    """
    if variant == "printed":
        return (-1) ** (a - b) if kind == "minus" else (-1) ** (b - a + 1)
    if variant == "derived":
        return -1 if kind == "minus" else 1
    raise ValueError(f"unknown sign variant {variant!r}")


def catalog_an(kind: str, a: int, b: int, N: int, variant: str = "printed") -> NcExpr:
    alg = a_n(N)
    n = N + 1
    if not (1 <= a <= n and 1 <= b <= n):
        raise ValueError(f"indices must lie in 1..{n}")
    if kind == "minus":
        if a < b:
            return alg.zero()
        t = alg.tmono(_an_diag_texp(N, b, 1))
        if a == b:
            return t
        c = alg.omega(1) * an_sign(kind, a, b, variant)
        return (e_nonsimple(alg, b, a) * t).scale(c)
    if kind == "plus":
        if a > b:
            return alg.zero()
        t = alg.tmono(_an_diag_texp(N, a, -1))
        if a == b:
            return t
        c = alg.omega(1) * an_sign(kind, a, b, variant)
        return (t * e_nonsimple(alg, b, a)).scale(c)
    raise ValueError(f"kind must be 'minus' or 'plus', got {kind!r}")


def an_latex(kind: str, a: int, b: int, N: int, variant: str = "printed") -> str:
    n = N + 1
    if kind == "minus":
        if a < b:
            return "0"
        t = _tmono_latex(_an_diag_texp(N, b, 1)) or "1"
        if a == b:
            return t
        sign = "-" if an_sign(kind, a, b, variant) < 0 else ""
        return f"{sign}\\omega E_{{{b}{a}}}{t}"
    if a > b:
        return "0"
    t = _tmono_latex(_an_diag_texp(N, a, -1)) or "1"
    if a == b:
        return t
    sign = "-" if an_sign(kind, a, b, variant) < 0 else ""
    return f"{sign}\\omega {t}E_{{{b}{a}}}"


def catalog_latex(alg: AlgebraSpec, kind: str, a: int, b: int, variant: str = "printed") -> str:
    if alg.name == "G2":
        entry = g2_entry(kind, a, b)
        return "0" if entry is None else entry.latex()
    return an_latex(kind, a, b, alg.rank, variant)


def catalog_lmatrix(alg: AlgebraSpec, kind: str, variant: str = "printed") -> LMatrix:
    n = 7 if alg.name == "G2" else alg.rank + 1
    out = LMatrix(kind, alg, n, source="catalog")
    for a in range(1, n + 1):
        for b in range(1, n + 1):
            if alg.name == "G2":
                x = catalog_g2(kind, a, b)
            else:
                x = catalog_an(kind, a, b, alg.rank, variant)
            if x:
                out.entries[(a - 1, b - 1)] = x
    return out
