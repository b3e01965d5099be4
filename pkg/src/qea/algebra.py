"""Expressions in U_q(g): words in e_j, f_j followed by a t-monomial.

Letters are encoded as nonzero ints, ``+j`` for e_j and ``-j`` for f_j.
t-exponents are stored scaled by the root order L (so t_j**(k/L) is the
integer k); every term is kept in the form ``coeff * word * t**k`` with the
t-monomial pushed to the right using t_i x_j = q_i**(+-a_ij) x_j t_i.
Words are never reduced modulo the Serre relations.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cache, cached_property
from typing import Iterable, Iterator

from .scalars import RatFunc, Scalar, ScalarSpec, SpecMismatchError, qbinom

Word = tuple[int, ...]
TExp = tuple[int, ...]
Key = tuple[Word, TExp]


@dataclass(frozen=True, eq=False)
class AlgebraSpec:
    name: str
    cartan: tuple[tuple[int, ...], ...]
    d: tuple[Fraction, ...]
    scalars: ScalarSpec
    _shift_cache: dict = field(default_factory=dict, repr=False, compare=False)
    _caches: dict = field(default_factory=dict, repr=False, compare=False)

    def cache(self, name) -> dict:
        return self._caches.setdefault(name, {})

    def __post_init__(self):
        r = self.rank
        for i in range(r):
            for j in range(r):
                if self.d[i] * self.cartan[i][j] != self.d[j] * self.cartan[j][i]:
                    raise ValueError("Cartan matrix is not symmetrizable by d")

    @property
    def rank(self) -> int:
        return len(self.cartan)

    @property
    def L(self) -> int:
        return self.scalars.root_order

    @cached_property
    def inv_cartan(self) -> tuple[tuple[Fraction, ...], ...]:
        return _invert_rational([[Fraction(x) for x in row] for row in self.cartan])

    @cached_property
    def sym(self) -> tuple[tuple[Fraction, ...], ...]:
        """(alpha_i, alpha_j) = d_i a_ij, in units of log q."""
        return tuple(
            tuple(self.d[i] * self.cartan[i][j] for j in range(self.rank)) for i in range(self.rank)
        )

    # -- scalars ----------------------------------------------------------
    def q(self, x=1) -> Scalar:
        return self.scalars.q(x)

    def qi(self, i: int, power: int = 1) -> Scalar:
        return self.scalars.q(self.d[i - 1] * power)

    def omega(self, i: int) -> Scalar:
        """omega_i = q_i - q_i^{-1}."""
        return self.qi(i) - self.qi(i, -1)

    def scalar(self, c) -> Scalar:
        return self.scalars.const(c)

    # -- generators -------------------------------------------------------
    def zero_texp(self) -> TExp:
        return (0,) * self.rank

    def one(self) -> "NcExpr":
        return NcExpr(self, {((), self.zero_texp()): self.scalars.one()})

    def zero(self) -> "NcExpr":
        return NcExpr(self, {})

    def const(self, c) -> "NcExpr":
        if not isinstance(c, Scalar):
            c = self.scalar(c)
        if c.is_zero():
            return self.zero()
        return NcExpr(self, {((), self.zero_texp()): c})

    def e(self, i: int) -> "NcExpr":
        self._check_index(i)
        return NcExpr(self, {((i,), self.zero_texp()): self.scalars.one()})

    def f(self, i: int) -> "NcExpr":
        self._check_index(i)
        return NcExpr(self, {((-i,), self.zero_texp()): self.scalars.one()})

    def t(self, i: int, r=1) -> "NcExpr":
        self._check_index(i)
        exps = [Fraction(0)] * self.rank
        exps[i - 1] = Fraction(r)
        return self.tmono(exps)

    def tmono(self, exps: Iterable) -> "NcExpr":
        """prod_j t_j**exps[j]."""
        return NcExpr(self, {((), self.scale_texp(exps)): self.scalars.one()})

    def word(self, letters: Iterable) -> "NcExpr":
        return NcExpr(self, {(parse_word(letters), self.zero_texp()): self.scalars.one()})

    def scale_texp(self, exps: Iterable) -> TExp:
        out = []
        for x in exps:
            k = Fraction(x) * self.L
            if k.denominator != 1:
                raise ValueError(f"t-exponent {x} has denominator not dividing {self.L}")
            out.append(int(k))
        if len(out) != self.rank:
            raise ValueError("t-exponent vector has wrong length")
        return tuple(out)

    def unscale_texp(self, k: TExp) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, self.L) for x in k)

    def _check_index(self, i: int):
        if not 1 <= i <= self.rank:
            raise ValueError(f"generator index {i} out of range for {self.name}")

    # -- commutation ------------------------------------------------------
    def root_counts(self, word: Word) -> tuple[int, ...]:
        """Net root content: +1 per e_j, -1 per f_j."""
        m = [0] * self.rank
        for x in word:
            if x > 0:
                m[x - 1] += 1
            else:
                m[-x - 1] -= 1
        return tuple(m)

    def commute_shift(self, k: TExp, counts: tuple[int, ...]) -> int:
        """v-exponent picked up by moving t**k (scaled) right past a word with root content ``counts``."""
        key = (k, counts)
        hit = self._shift_cache.get(key)
        if hit is not None:
            return hit
        total = Fraction(0)
        sym = self.sym
        for i, ki in enumerate(k):
            if ki:
                for j, mj in enumerate(counts):
                    if mj:
                        total += ki * sym[i][j] * mj
        if total.denominator != 1:
            raise ValueError("fractional power of v produced by t-commutation")
        self._shift_cache[key] = int(total)
        return int(total)

    def mul_keys(self, k1: Key, k2: Key) -> tuple[int, Key]:
        (w1, t1), (w2, t2) = k1, k2
        shift = self.commute_shift(t1, self.root_counts(w2)) if w2 and any(t1) else 0
        return shift, (w1 + w2, tuple(a + b for a, b in zip(t1, t2)))

    def __repr__(self) -> str:
        return f"AlgebraSpec({self.name})"


def _invert_rational(m: list[list[Fraction]]) -> tuple[tuple[Fraction, ...], ...]:
    n = len(m)
    a = [row[:] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        p = next(r for r in range(c, n) if a[r][c] != 0)
        a[c], a[p] = a[p], a[c]
        piv = a[c][c]
        a[c] = [x / piv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                fac = a[r][c]
                a[r] = [x - fac * y for x, y in zip(a[r], a[c])]
    return tuple(tuple(row[n:]) for row in a)


@cache
def a_n(N: int) -> AlgebraSpec:
    """U_q(A_N) with q = v**(N+1) so that q**(j/(N+1)) is representable."""
    if N < 1:
        raise ValueError("A_N needs N >= 1")
    cartan = tuple(
        tuple(2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(N)) for i in range(N)
    )
    return AlgebraSpec(f"A{N}", cartan, (Fraction(1),) * N, ScalarSpec(N + 1))


@cache
def g2() -> AlgebraSpec:
    """U_q(G2) with q_1 = q = v**3, q_2 = q**(1/3) = v and s = [2]**(1/2) in base v."""
    spec = ScalarSpec(3, RatFunc.laurent({1: 1, -1: 1}))
    return AlgebraSpec("G2", ((2, -1), (-3, 2)), (Fraction(1), Fraction(1, 3)), spec)


def algebra_from_name(name: str) -> AlgebraSpec:
    """Accepts ``a2``, ``A2``, ``aN:2`` and ``g2``."""
    n = name.strip().lower()
    if n == "g2":
        return g2()
    if n.startswith("an:"):
        return a_n(int(n[3:]))
    if n.startswith("a") and n[1:].isdigit():
        return a_n(int(n[1:]))
    raise ValueError(f"unknown algebra {name!r}")


# ---------------------------------------------------------------------------
# letters


def letter_name(x: int) -> str:
    return f"e{x}" if x > 0 else f"f{-x}"


def parse_letter(x) -> int:
    if isinstance(x, int):
        if x == 0:
            raise ValueError("0 is not a letter")
        return x
    s = str(x).strip()
    if len(s) >= 2 and s[0] in "ef" and s[1:].isdigit():
        i = int(s[1:])
        return i if s[0] == "e" else -i
    raise ValueError(f"bad generator symbol {x!r}")


def parse_word(letters) -> Word:
    if isinstance(letters, str):
        letters = letters.split()
    return tuple(parse_letter(x) for x in letters)


def weight_of(word, rank: int | None = None) -> tuple[int, ...]:
    """Root-lattice coefficients of a pure-e or pure-f word.

    Without ``rank`` the vector length is the largest generator index present.
    """
    w = parse_word(word)
    if any(x > 0 for x in w) and any(x < 0 for x in w):
        raise ValueError("weight_of needs a pure e-word or pure f-word")
    if rank is None:
        rank = max((abs(x) for x in w), default=0)
    return _counts(w, rank)


def weight_in(alg: AlgebraSpec, word) -> tuple[int, ...]:
    w = parse_word(word)
    if any(x > 0 for x in w) and any(x < 0 for x in w):
        raise ValueError("weight_of needs a pure e-word or pure f-word")
    return _counts(w, alg.rank)


def _counts(w: Word, r: int) -> tuple[int, ...]:
    m = [0] * r
    for x in w:
        m[abs(x) - 1] += 1
    return tuple(m)


# ---------------------------------------------------------------------------
# expressions


class NcExpr:
    __slots__ = ("alg", "terms")

    def __init__(self, alg: AlgebraSpec, terms: dict[Key, Scalar]):
        self.alg = alg
        self.terms = terms

    # -- basic protocol ---------------------------------------------------
    def _coerce(self, other) -> "NcExpr":
        if isinstance(other, NcExpr):
            if other.alg is not self.alg:
                raise SpecMismatchError(f"{self.alg.name} vs {other.alg.name}")
            return other
        return self.alg.const(other)

    def items(self) -> Iterator[tuple[Key, Scalar]]:
        for k in sorted(self.terms):
            yield k, self.terms[k]

    def __len__(self) -> int:
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, NcExpr):
            if isinstance(other, (int, Fraction, Scalar)):
                other = self.alg.const(other)
            else:
                return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def __add__(self, other) -> "NcExpr":
        other = self._coerce(other)
        out = dict(self.terms)
        _accumulate(out, other.terms.items())
        return NcExpr(self.alg, out)

    __radd__ = __add__

    def __neg__(self) -> "NcExpr":
        return NcExpr(self.alg, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other) -> "NcExpr":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "NcExpr":
        return self._coerce(other) - self

    def __mul__(self, other) -> "NcExpr":
        if isinstance(other, NcExpr):
            return nc_multiply(self, other)
        if isinstance(other, (int, Fraction, Scalar)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other) -> "NcExpr":
        if isinstance(other, (int, Fraction, Scalar)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int) -> "NcExpr":
        out = self.alg.one()
        for _ in range(n):
            out = out * self
        return out

    def scale(self, c) -> "NcExpr":
        if not isinstance(c, Scalar):
            c = self.alg.scalar(c)
        if c.is_zero():
            return self.alg.zero()
        return NcExpr(self.alg, {k: v * c for k, v in self.terms.items()})

    def words(self) -> set[Word]:
        return {w for (w, _) in self.terms}

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({c!r})*{format_key(self.alg, k)}" for k, c in self.items())

    # -- json -------------------------------------------------------------
    def to_json(self) -> list:
        return [
            {
                "coeff": c.to_json(),
                "word": [letter_name(x) for x in w],
                "texp": [str(x) for x in self.alg.unscale_texp(t)],
            }
            for (w, t), c in self.items()
        ]

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @staticmethod
    def from_json(obj: list, alg: AlgebraSpec) -> "NcExpr":
        out: dict[Key, Scalar] = {}
        for term in obj:
            c = Scalar.from_json(term["coeff"], alg.scalars)
            key = (parse_word(term["word"]), alg.scale_texp(Fraction(x) for x in term["texp"]))
            _accumulate(out, [(key, c)])
        return NcExpr(alg, out)


def _accumulate(out: dict, items) -> None:
    for k, c in items:
        if k in out:
            s = out[k] + c
            if s.is_zero():
                del out[k]
            else:
                out[k] = s
        elif not c.is_zero():
            out[k] = c


def format_key(alg: AlgebraSpec, key: Key) -> str:
    w, t = key
    parts = [letter_name(x) for x in w]
    for j, k in enumerate(t, start=1):
        if k:
            parts.append(f"t{j}^({Fraction(k, alg.L)})")
    return "*".join(parts) or "1"


def key_latex(alg: AlgebraSpec, key: Key) -> str:
    w, t = key
    parts = []
    i = 0
    while i < len(w):
        j = i
        while j < len(w) and w[j] == w[i]:
            j += 1
        sym = f"{'e' if w[i] > 0 else 'f'}_{{{abs(w[i])}}}"
        parts.append(sym if j - i == 1 else f"{sym}^{{{j - i}}}")
        i = j
    for j, k in enumerate(t, start=1):
        if k:
            e = Fraction(k, alg.L)
            parts.append(f"t_{{{j}}}" if e == 1 else f"t_{{{j}}}^{{{e}}}")
    return "".join(parts)


def expr_latex(x: "NcExpr") -> str:
    """Expanded LaTeX, one signed term per monomial, coefficients in v."""
    from .scalars import scalar_latex

    if x.is_zero():
        return "0"
    out = []
    for key, c in x.items():
        mono = key_latex(x.alg, key)
        coef = scalar_latex(c)
        if coef == "1":
            piece = "+" + (mono or "1")
        elif coef == "-1":
            piece = "-" + (mono or "1")
        else:
            piece = "+\\left(" + coef + "\\right)" + mono
        out.append(piece)
    text = "".join(out)
    return text[1:] if text.startswith("+") else text


def monomial(alg: AlgebraSpec, key: Key, coeff: Scalar | None = None) -> NcExpr:
    return NcExpr(alg, {key: coeff if coeff is not None else alg.scalars.one()})


def nc_multiply(x: NcExpr, y: NcExpr) -> NcExpr:
    """Product with all t-monomials moved to the right of each word."""
    if x.alg is not y.alg:
        raise SpecMismatchError(f"{x.alg.name} vs {y.alg.name}")
    alg = x.alg
    out: dict[Key, Scalar] = {}
    for k1, c1 in x.terms.items():
        for k2, c2 in y.terms.items():
            shift, key = alg.mul_keys(k1, k2)
            _accumulate(out, [(key, (c1 * c2).mul_vpow(shift))])
    return NcExpr(alg, out)


# ---------------------------------------------------------------------------
# tensors


class TensorExpr:
    """Finite sum of coeff * (key_1 (x) ... (x) key_n); ``arity`` slots."""

    __slots__ = ("alg", "arity", "terms")

    def __init__(self, alg: AlgebraSpec, arity: int, terms: dict[tuple[Key, ...], Scalar]):
        self.alg = alg
        self.arity = arity
        self.terms = terms

    @staticmethod
    def pure(*factors: NcExpr) -> "TensorExpr":
        alg = factors[0].alg
        terms: dict = {(): alg.scalars.one()}
        for f in factors:
            nxt: dict = {}
            for keys, c in terms.items():
                for k, c2 in f.terms.items():
                    _accumulate(nxt, [(keys + (k,), c * c2)])
            terms = nxt
        return TensorExpr(alg, len(factors), terms)

    def __add__(self, other: "TensorExpr") -> "TensorExpr":
        out = dict(self.terms)
        _accumulate(out, other.terms.items())
        return TensorExpr(self.alg, self.arity, out)

    def __neg__(self) -> "TensorExpr":
        return TensorExpr(self.alg, self.arity, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "TensorExpr") -> "TensorExpr":
        return self + (-other)

    def __mul__(self, other: "TensorExpr") -> "TensorExpr":
        if other.arity != self.arity:
            raise ValueError("tensor arity mismatch")
        alg = self.alg
        out: dict = {}
        for ks1, c1 in self.terms.items():
            for ks2, c2 in other.terms.items():
                shift = 0
                keys = []
                for a, b in zip(ks1, ks2):
                    s, k = alg.mul_keys(a, b)
                    shift += s
                    keys.append(k)
                _accumulate(out, [(tuple(keys), (c1 * c2).mul_vpow(shift))])
        return TensorExpr(alg, self.arity, out)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorExpr):
            return NotImplemented
        return self.arity == other.arity and (self - other).is_zero()

    __hash__ = None

    def flip(self) -> "TensorExpr":
        """P o T for arity 2."""
        if self.arity != 2:
            raise ValueError("flip needs arity 2")
        return TensorExpr(self.alg, 2, {(b, a): c for (a, b), c in self.terms.items()})

    def apply_slot(self, slot: int, fn) -> "TensorExpr":
        """Replace slot ``slot`` by ``fn(NcExpr)`` which returns an NcExpr or TensorExpr."""
        alg = self.alg
        out: dict = {}
        new_arity = None
        for keys, c in self.terms.items():
            img = fn(monomial(alg, keys[slot]))
            if isinstance(img, NcExpr):
                img_terms = {(k,): v for k, v in img.terms.items()}
                arity = 1
            elif isinstance(img, TensorExpr):
                img_terms, arity = img.terms, img.arity
            else:  # scalar
                img_terms, arity = ({(): img} if not img.is_zero() else {}), 0
            new_arity = self.arity - 1 + arity
            for ks, v in img_terms.items():
                _accumulate(out, [(keys[:slot] + ks + keys[slot + 1:], c * v)])
        if new_arity is None:
            new_arity = self.arity
        return TensorExpr(alg, new_arity, out)

    def multiply_out(self) -> NcExpr:
        """m(x_1 (x) ... (x) x_n) = x_1 ... x_n."""
        alg = self.alg
        out: dict = {}
        for keys, c in self.terms.items():
            shift, acc = 0, ((), alg.zero_texp())
            for k in keys:
                s, acc = alg.mul_keys(acc, k)
                shift += s
            _accumulate(out, [(acc, c.mul_vpow(shift))])
        return NcExpr(alg, out)

    def as_expr(self) -> NcExpr:
        if self.arity != 1:
            raise ValueError("not a single-slot tensor")
        return NcExpr(self.alg, {ks[0]: c for ks, c in self.terms.items()})

    def __repr__(self) -> str:
        return " + ".join(
            f"({c!r})*" + " (x) ".join(format_key(self.alg, k) for k in ks)
            for ks, c in sorted(self.terms.items())
        ) or "0"


# ---------------------------------------------------------------------------
# Hopf structure


def _letter_coproduct(alg: AlgebraSpec, x: int) -> TensorExpr:
    one = alg.scalars.one()
    z = alg.zero_texp()
    j = abs(x)
    tj = tuple(alg.L if i == j - 1 else 0 for i in range(alg.rank))
    tj_inv = tuple(-v for v in tj)
    if x > 0:  # e (x) 1 + t (x) e
        terms = {(((x,), z), ((), z)): one, (((), tj), ((x,), z)): one}
    else:  # f (x) t^-1 + 1 (x) f
        terms = {(((x,), z), ((), tj_inv)): one, (((), z), ((x,), z)): one}
    return TensorExpr(alg, 2, terms)


def _key_coproduct(alg: AlgebraSpec, key: Key) -> TensorExpr:
    cache = alg.cache("coproduct")
    hit = cache.get(key)
    if hit is not None:
        return hit
    w, t = key
    z = alg.zero_texp()
    acc = TensorExpr(alg, 2, {(((), z), ((), z)): alg.scalars.one()})
    for x in w:
        acc = acc * _letter_coproduct(alg, x)
    if any(t):
        acc = acc * TensorExpr(alg, 2, {(((), t), ((), t)): alg.scalars.one()})
    cache[key] = acc
    return acc


def coproduct(x: NcExpr) -> TensorExpr:
    alg = x.alg
    out: dict = {}
    for key, c in x.terms.items():
        _accumulate(out, ((ks, c * v) for ks, v in _key_coproduct(alg, key).terms.items()))
    return TensorExpr(alg, 2, out)


def _letter_antipode(alg: AlgebraSpec, x: int, inverse: bool) -> NcExpr:
    j = abs(x)
    t, tinv = alg.t(j), alg.t(j, -1)
    if x > 0:
        # S(e) = -t^-1 e ; S^-1(e) = -e t^-1
        return -(tinv * alg.e(j)) if not inverse else -(alg.e(j) * tinv)
    # S(f) = -f t ; S^-1(f) = -t f
    return -(alg.f(j) * t) if not inverse else -(t * alg.f(j))


def antipode(x: NcExpr, inverse: bool = False) -> NcExpr:
    """S (or S^-1 with ``inverse=True``), an anti-homomorphism."""
    alg = x.alg
    cache = alg.cache(("antipode", inverse))
    out: dict = {}
    for key, c in x.terms.items():
        img = cache.get(key)
        if img is None:
            w, t = key
            # S(w t) = S(t) S(w_n) ... S(w_1)
            img = monomial(alg, ((), tuple(-k for k in t)))
            for letter in reversed(w):
                img = img * _letter_antipode(alg, letter, inverse)
            cache[key] = img
        _accumulate(out, ((k, c * v) for k, v in img.terms.items()))
    return NcExpr(alg, out)


def counit(x: NcExpr) -> Scalar:
    total = x.alg.scalars.zero()
    for (w, _), c in x.terms.items():
        if not w:
            total = total + c
    return total


def serre_element(alg: AlgebraSpec, i: int, j: int, kind: str = "e") -> NcExpr:
    """sum_n (-1)^n [1-a_ij choose n]_{q_i} x_i^{1-a_ij-n} x_j x_i^n."""
    if i == j:
        raise ValueError("Serre element needs i != j")
    alg._check_index(i)
    alg._check_index(j)
    gen = alg.e if kind == "e" else alg.f
    if kind not in ("e", "f"):
        raise ValueError("kind must be 'e' or 'f'")
    m = 1 - alg.cartan[i - 1][j - 1]
    xi, xj = gen(i), gen(j)
    out = alg.zero()
    for n in range(m + 1):
        c = qbinom(m, n, alg.d[i - 1], alg.scalars)
        if n % 2:
            c = -c
        out = out + (xi ** (m - n) * xj * xi**n).scale(c)
    return out
