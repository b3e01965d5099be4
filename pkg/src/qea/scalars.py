"""Exact scalars for quantum enveloping algebras.

Every coefficient lives in Q(v), where q = v**L for a fixed root order L,
optionally extended by one square root s with s**2 = Delta(v) for a fixed
Laurent polynomial Delta.  Polynomial arithmetic is delegated to FLINT's
``fmpq_poly``; this module only keeps the canonical form

    v**shift * num(v) / den(v)

with num(0) != 0, den(0) != 0, den monic and gcd(num, den) = 1, which makes
equality a syntactic comparison.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from flint import fmpq, fmpq_poly

__all__ = [
    "RatFunc",
    "ScalarSpec",
    "Scalar",
    "QuadNumber",
    "SpecMismatchError",
    "qnum",
    "qbinom",
    "scalar_latex",
    "eval_at_point",
]


class SpecMismatchError(ValueError):
    """Raised when values built over different specs are combined."""


_ONE = fmpq_poly([1])


def _as_fmpq(c) -> fmpq:
    if isinstance(c, fmpq):
        return c
    c = Fraction(c)
    return fmpq(c.numerator, c.denominator)


def _to_fraction(c: fmpq) -> Fraction:
    return Fraction(int(c.p), int(c.q))


def _low_order(p: fmpq_poly) -> int:
    k = 0
    while p[k] == 0:
        k += 1
    return k


def _reverse(p: fmpq_poly) -> fmpq_poly:
    return fmpq_poly(list(reversed(p.coeffs())))


class RatFunc:
    """Element of Q(v) in canonical form ``v**shift * num / den``."""

    __slots__ = ("num", "den", "shift")

    def __init__(self, num: fmpq_poly, den: fmpq_poly, shift: int):
        # trusted constructor: callers guarantee canonical form
        self.num = num
        self.den = den
        self.shift = shift

    # -- construction -------------------------------------------------
    @staticmethod
    def make(num: fmpq_poly, den: fmpq_poly = _ONE, shift: int = 0) -> "RatFunc":
        if num.is_zero():
            return ZERO_RF
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        k = _low_order(num)
        if k:
            num = num.right_shift(k)
            shift += k
        k = _low_order(den)
        if k:
            den = den.right_shift(k)
            shift -= k
        if den.degree() > 0:
            g = num.gcd(den)
            if g.degree() > 0:
                num = num // g
                den = den // g
        lc = den.leading_coefficient()
        if lc != 1:
            num = num / lc
            den = den / lc
        return RatFunc(num, den, shift)

    @staticmethod
    def const(c) -> "RatFunc":
        c = _as_fmpq(c)
        if c == 0:
            return ZERO_RF
        return RatFunc(fmpq_poly([c]), _ONE, 0)

    @staticmethod
    def vpow(n: int) -> "RatFunc":
        return RatFunc(_ONE, _ONE, n)

    @staticmethod
    def laurent(coeffs: dict[int, object]) -> "RatFunc":
        """Laurent polynomial from ``{exponent: coefficient}``."""
        coeffs = {e: _as_fmpq(c) for e, c in coeffs.items() if c != 0}
        if not coeffs:
            return ZERO_RF
        lo = min(coeffs)
        hi = max(coeffs)
        dense = [fmpq(0)] * (hi - lo + 1)
        for e, c in coeffs.items():
            dense[e - lo] = c
        return RatFunc(fmpq_poly(dense), _ONE, lo)

    # -- predicates ---------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def is_laurent(self) -> bool:
        return self.den.degree() == 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatFunc):
            if isinstance(other, (int, Fraction)):
                other = RatFunc.const(other)
            else:
                return NotImplemented
        return self.shift == other.shift and self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.shift, tuple(self.num.coeffs()), tuple(self.den.coeffs())))

    # -- arithmetic ---------------------------------------------------
    def __neg__(self) -> "RatFunc":
        if self.num.is_zero():
            return self
        return RatFunc(-self.num, self.den, self.shift)

    def __add__(self, other: "RatFunc") -> "RatFunc":
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        s = min(self.shift, other.shift)
        n1 = self.num.left_shift(self.shift - s) if self.shift > s else self.num
        n2 = other.num.left_shift(other.shift - s) if other.shift > s else other.num
        if self.den == other.den:
            return RatFunc.make(n1 + n2, self.den, s)
        return RatFunc.make(n1 * other.den + n2 * self.den, self.den * other.den, s)

    def __sub__(self, other: "RatFunc") -> "RatFunc":
        return self + (-other)

    def __mul__(self, other: "RatFunc") -> "RatFunc":
        if self.num.is_zero() or other.num.is_zero():
            return ZERO_RF
        shift = self.shift + other.shift
        if self.den.degree() == 0 and other.den.degree() == 0:
            return RatFunc(self.num * other.num, _ONE, shift)
        n1, d1, n2, d2 = self.num, self.den, other.num, other.den
        g = n1.gcd(d2)
        if g.degree() > 0:
            n1, d2 = n1 // g, d2 // g
        g = n2.gcd(d1)
        if g.degree() > 0:
            n2, d1 = n2 // g, d1 // g
        num, den = n1 * n2, d1 * d2
        lc = den.leading_coefficient()
        if lc != 1:
            num, den = num / lc, den / lc
        return RatFunc(num, den, shift)

    def inverse(self) -> "RatFunc":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RatFunc.make(self.den, self.num, -self.shift)

    def __truediv__(self, other: "RatFunc") -> "RatFunc":
        return self * other.inverse()

    def mul_vpow(self, n: int) -> "RatFunc":
        if n == 0 or self.num.is_zero():
            return self
        return RatFunc(self.num, self.den, self.shift + n)

    def bar(self) -> "RatFunc":
        """Image under v -> 1/v."""
        if self.num.is_zero():
            return self
        shift = -self.shift - self.num.degree() + self.den.degree()
        return RatFunc.make(_reverse(self.num), _reverse(self.den), shift)

    # -- inspection ---------------------------------------------------
    def num_terms(self) -> list[tuple[int, Fraction]]:
        return [
            (self.shift + i, _to_fraction(c))
            for i, c in enumerate(self.num.coeffs())
            if c != 0
        ]

    def den_terms(self) -> list[tuple[int, Fraction]]:
        return [(i, _to_fraction(c)) for i, c in enumerate(self.den.coeffs()) if c != 0]

    def degree_span(self) -> int:
        """Total degree used as a size measure for pivoting."""
        return self.num.degree() + self.den.degree()

    def __call__(self, v0) -> Fraction:
        v0 = Fraction(v0)
        if v0 == 0:
            raise ZeroDivisionError("evaluation at v = 0")
        x = _as_fmpq(v0)
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError(f"pole at v = {v0}")
        return _to_fraction(self.num(x) / d) * v0**self.shift

    def __repr__(self) -> str:
        return f"RatFunc({_poly_text(self.num_terms(), 'v')} / {_poly_text(self.den_terms(), 'v')})"

    # -- json ---------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "num": [[e, str(c)] for e, c in self.num_terms()],
            "den": [[e, str(c)] for e, c in self.den_terms()],
        }

    @staticmethod
    def from_json(obj: dict) -> "RatFunc":
        num = RatFunc.laurent({int(e): Fraction(c) for e, c in obj["num"]})
        den = RatFunc.laurent({int(e): Fraction(c) for e, c in obj["den"]})
        return num / den


ZERO_RF = RatFunc(fmpq_poly([]), _ONE, 0)
ONE_RF = RatFunc(_ONE, _ONE, 0)


def _poly_text(terms, var: str) -> str:
    if not terms:
        return "0"
    parts = []
    for e, c in terms:
        if e == 0:
            mono = ""
        elif e == 1:
            mono = var
        else:
            mono = f"{var}^{e}"
        if mono and c == 1:
            parts.append(mono)
        elif mono and c == -1:
            parts.append("-" + mono)
        elif mono:
            parts.append(f"{c}*{mono}")
        else:
            parts.append(str(c))
    return " + ".join(parts).replace("+ -", "- ")


@dataclass(frozen=True)
class ScalarSpec:
    """q = v**root_order; ``sqrt_of`` is the Laurent polynomial whose root s is adjoined."""

    root_order: int
    sqrt_of: RatFunc | None = None

    def __post_init__(self):
        if self.root_order < 1:
            raise ValueError("root order must be >= 1")
        if self.sqrt_of is not None:
            if self.sqrt_of.is_zero() or not self.sqrt_of.is_laurent():
                raise ValueError("adjoined square root needs a nonzero Laurent polynomial")

    # convenience constructors
    def zero(self) -> "Scalar":
        return Scalar(ZERO_RF, None, self)

    def one(self) -> "Scalar":
        return Scalar(ONE_RF, None, self)

    def const(self, c) -> "Scalar":
        return Scalar(RatFunc.const(c), None, self)

    def v(self, n: int = 1) -> "Scalar":
        return Scalar(RatFunc.vpow(n), None, self)

    def q(self, x=1) -> "Scalar":
        """q**x; L*x must be an integer."""
        e = Fraction(x) * self.root_order
        if e.denominator != 1:
            raise ValueError(f"q^{x} is not representable with root order {self.root_order}")
        return self.v(int(e))

    def s(self) -> "Scalar":
        if self.sqrt_of is None:
            raise ValueError("no square root adjoined in this spec")
        return Scalar(ZERO_RF, ONE_RF, self)

    def scalar(self, a: RatFunc, b: RatFunc | None = None) -> "Scalar":
        if b is not None and b.is_zero():
            b = None
        if b is not None and self.sqrt_of is None:
            raise ValueError("s-component given but no square root adjoined")
        return Scalar(a, b, self)


class Scalar:
    """a + b*s with a, b in Q(v); b is ``None`` when zero."""

    __slots__ = ("a", "b", "spec")

    def __init__(self, a: RatFunc, b: RatFunc | None, spec: ScalarSpec):
        self.a = a
        self.b = b
        self.spec = spec

    def _coerce(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            if other.spec is not self.spec and other.spec != self.spec:
                raise SpecMismatchError(f"{self.spec} vs {other.spec}")
            return other
        if isinstance(other, (int, Fraction)):
            return Scalar(RatFunc.const(other), None, self.spec)
        raise TypeError(f"cannot combine Scalar with {type(other).__name__}")

    def is_zero(self) -> bool:
        return self.a.is_zero() and self.b is None

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __hash__(self) -> int:
        return hash((self.a, self.b))

    def __neg__(self) -> "Scalar":
        return Scalar(-self.a, None if self.b is None else -self.b, self.spec)

    def __add__(self, other) -> "Scalar":
        other = self._coerce(other)
        if self.b is None:
            b = other.b
        elif other.b is None:
            b = self.b
        else:
            b = self.b + other.b
            if b.is_zero():
                b = None
        return Scalar(self.a + other.a, b, self.spec)

    __radd__ = __add__

    def __sub__(self, other) -> "Scalar":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Scalar":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Scalar":
        other = self._coerce(other)
        a1, b1, a2, b2 = self.a, self.b, other.a, other.b
        if b1 is None and b2 is None:
            return Scalar(a1 * a2, None, self.spec)
        if b1 is None:
            b = a1 * b2
            return Scalar(a1 * a2, b or None, self.spec)
        if b2 is None:
            b = b1 * a2
            return Scalar(a1 * a2, b or None, self.spec)
        a = a1 * a2 + b1 * b2 * self.spec.sqrt_of
        b = a1 * b2 + a2 * b1
        return Scalar(a, b or None, self.spec)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero scalar")
        if self.b is None:
            return Scalar(self.a.inverse(), None, self.spec)
        # (a - b s) / (a^2 - b^2 Delta)
        norm = self.a * self.a - self.b * self.b * self.spec.sqrt_of
        ninv = norm.inverse()
        return Scalar(self.a * ninv, -(self.b * ninv), self.spec)

    def __truediv__(self, other) -> "Scalar":
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other) -> "Scalar":
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int) -> "Scalar":
        if n < 0:
            return self.inverse() ** (-n)
        out = Scalar(ONE_RF, None, self.spec)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def mul_vpow(self, n: int) -> "Scalar":
        if n == 0:
            return self
        return Scalar(self.a.mul_vpow(n), None if self.b is None else self.b.mul_vpow(n), self.spec)

    def bar(self) -> "Scalar":
        """v -> 1/v with s fixed (valid because the adjoined element is bar-invariant)."""
        return Scalar(self.a.bar(), None if self.b is None else self.b.bar(), self.spec)

    def is_rational_function(self) -> bool:
        return self.b is None

    def __repr__(self) -> str:
        if self.b is None:
            return f"Scalar({self.a!r})"
        return f"Scalar({self.a!r} + s*{self.b!r})"

    def to_json(self) -> dict:
        return {"a": self.a.to_json(), "b": (self.b or ZERO_RF).to_json()}

    @staticmethod
    def from_json(obj: dict, spec: ScalarSpec) -> "Scalar":
        return spec.scalar(RatFunc.from_json(obj["a"]), RatFunc.from_json(obj["b"]))

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


# ---------------------------------------------------------------------------
# q-numbers


def _base_exponent(d, spec: ScalarSpec) -> int:
    e = Fraction(d) * spec.root_order
    if e.denominator != 1:
        raise ValueError(f"base q^{d} not representable with root order {spec.root_order}")
    return int(e)


@lru_cache(maxsize=None)
def qnum(m: int, d, spec: ScalarSpec) -> Scalar:
    """[m] in base q**d, as the balanced Laurent polynomial."""
    e = _base_exponent(d, spec)
    if e == 0:
        raise ValueError("q-number with base q^0 is undefined")
    if m < 0:
        return -qnum(-m, d, spec)
    terms = {e * (m - 1 - 2 * k): 1 for k in range(m)}
    return Scalar(RatFunc.laurent(terms), None, spec)


@lru_cache(maxsize=None)
def qfactorial(n: int, d, spec: ScalarSpec) -> Scalar:
    out = spec.one()
    for m in range(1, n + 1):
        out = out * qnum(m, d, spec)
    return out


@lru_cache(maxsize=None)
def qbinom(n: int, k: int, d, spec: ScalarSpec) -> Scalar:
    if not 0 <= k <= n:
        raise ValueError(f"q-binomial needs 0 <= k <= n, got n={n}, k={k}")
    out = qfactorial(n, d, spec) / (qfactorial(k, d, spec) * qfactorial(n - k, d, spec))
    if not out.a.is_laurent():
        raise ArithmeticError("q-binomial did not reduce to a Laurent polynomial")
    return out


# ---------------------------------------------------------------------------
# point evaluation


class QuadNumber:
    """p + r*sqrt(D) with p, r, D rational; D fixed per value family."""

    __slots__ = ("p", "r", "D")

    def __init__(self, p, r=0, D=None):
        p, r = Fraction(p), Fraction(r)
        if D is not None:
            D = Fraction(D)
            root = _rational_sqrt(D)
            if root is not None:
                p, r = p + r * root, Fraction(0)
        self.p, self.r, self.D = p, r, D

    def _coerce(self, other) -> "QuadNumber":
        if isinstance(other, QuadNumber):
            if self.D is not None and other.D is not None and self.D != other.D:
                raise SpecMismatchError("quadratic fields differ")
            return other
        return QuadNumber(other, 0, self.D)

    def _d(self, other):
        return self.D if self.D is not None else other.D

    def __add__(self, other):
        o = self._coerce(other)
        return QuadNumber(self.p + o.p, self.r + o.r, self._d(o))

    __radd__ = __add__

    def __neg__(self):
        return QuadNumber(-self.p, -self.r, self.D)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        o = self._coerce(other)
        D = self._d(o)
        rr = self.r * o.r
        return QuadNumber(self.p * o.p + (rr * D if rr else 0), self.p * o.r + self.r * o.p, D)

    __rmul__ = __mul__

    def inverse(self):
        norm = self.p * self.p - self.r * self.r * (self.D or 0)
        if norm == 0:
            raise ZeroDivisionError("inverse of zero")
        return QuadNumber(self.p / norm, -self.r / norm, self.D)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __bool__(self):
        return bool(self.p) or bool(self.r)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.r == 0 and self.p == other
        if not isinstance(other, QuadNumber):
            return NotImplemented
        return self.p == other.p and self.r == other.r

    def __hash__(self):
        return hash((self.p, self.r))

    def __repr__(self):
        if not self.r:
            return f"{self.p}"
        root = f"{abs(self.r)}*sqrt({self.D})"
        if not self.p:
            return root if self.r > 0 else f"-{root}"
        return f"{self.p} {'+' if self.r > 0 else '-'} {root}"


def _rational_sqrt(x: Fraction) -> Fraction | None:
    if x < 0:
        return None
    from math import isqrt

    n, d = x.numerator, x.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def eval_at_point(x: Scalar, v0) -> QuadNumber:
    """Exact value of ``x`` at v = v0, in Q(sqrt(Delta(v0)))."""
    v0 = Fraction(v0)
    if v0 == 0:
        raise ZeroDivisionError("evaluation at v = 0")
    D = x.spec.sqrt_of(v0) if x.spec.sqrt_of is not None else None
    r = x.b(v0) if x.b is not None else 0
    return QuadNumber(x.a(v0), r, D)


# ---------------------------------------------------------------------------
# LaTeX


def _laurent_latex(terms, var: str = "v") -> str:
    parts = []
    for e, c in sorted(terms, key=lambda t: -t[0]):
        if e == 0:
            mono = ""
        elif e == 1:
            mono = var
        else:
            mono = f"{var}^{{{e}}}"
        mag = abs(c)
        if mono and mag == 1:
            body = mono
        elif mag.denominator == 1:
            body = f"{mag.numerator}{mono}"
        else:
            body = f"\\frac{{{mag.numerator}}}{{{mag.denominator}}}{mono}"
        parts.append(("-" if c < 0 else "+") + body)
    if not parts:
        return "0"
    out = "".join(parts)
    return out[1:] if out.startswith("+") else out


def ratfunc_latex(x: RatFunc, var: str = "v") -> str:
    num = _laurent_latex(x.num_terms(), var)
    den = x.den_terms()
    if den == [(0, Fraction(1))]:
        return num
    return f"\\frac{{{num}}}{{{_laurent_latex(den, var)}}}"


def scalar_latex(x: Scalar, var: str = "v") -> str:
    a = ratfunc_latex(x.a, var)
    if x.b is None:
        return a
    b = ratfunc_latex(x.b, var)
    b_part = "s" if b == "1" else f"\\left({b}\\right)s"
    return b_part if x.a.is_zero() else f"{a}+{b_part}"
