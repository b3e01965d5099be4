"""L-operators obtained by slicing R, plus the A_N root vectors.

For the minimal representation with weights nu_b:

    (L-)^a_b = sum_i u^i D(v_i)_{ab} T(nu_b)
    (L+)^a_b = S^-1( sum_i D(u^i)_{ab} v_i T(nu_b) )

where T(nu) is the t-monomial of ``cartan_factor``.  Evaluating (L-)^a_b in
the same representation reproduces the cells R^{ca}_{db}; (L+)^a_b gives
the cells of R^-1 = (id x S^-1) R at (a c, b d).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations

from .algebra import AlgebraSpec, NcExpr, antipode
from .matrix import SparseMatrix
from .report import Report
from .reps import Representation
from .rmatrix import RMatrix, cartan_monomial, r_inverse_matrix, terms_for


@dataclass
class LMatrix:
    kind: str  # "minus" or "plus"
    alg: AlgebraSpec
    dim: int
    entries: dict = field(default_factory=dict)  # (a, b) 0-based -> NcExpr
    source: str = "slice"

    def __post_init__(self):
        if self.kind not in ("minus", "plus"):
            raise ValueError(f"kind must be 'minus' or 'plus', got {self.kind!r}")

    def get(self, a: int, b: int) -> NcExpr:
        """Entry with 1-based indices."""
        return self.entries.get((a - 1, b - 1)) or self.alg.zero()

    def nonzero(self):
        for (a, b) in sorted(self.entries):
            x = self.entries[(a, b)]
            if x:
                yield a + 1, b + 1, x

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "algebra": self.alg.name,
            "source": self.source,
            "dim": self.dim,
            "entries": [{"a": a, "b": b, "expr": x.to_json()} for a, b, x in self.nonzero()],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def lminus_from_r(rep: Representation, max_height: int | None = None) -> LMatrix:
    alg = rep.alg
    n = rep.dim
    acc: dict = {}
    for dps in terms_for(rep, max_height):
        for u, v in dps.terms:
            dv = rep.evaluate(v)
            for (a, b), c in dv.entries():
                term = u.scale(c)
                acc[(a, b)] = acc[(a, b)] + term if (a, b) in acc else term
    out = LMatrix("minus", alg, n, source="slice")
    for (a, b), x in acc.items():
        x = x * cartan_monomial(alg, rep.weights[b])
        if x:
            out.entries[(a, b)] = x
    return out


def lplus_from_r(rep: Representation, max_height: int | None = None) -> LMatrix:
    alg = rep.alg
    n = rep.dim
    acc: dict = {}
    for dps in terms_for(rep, max_height):
        for u, v in dps.terms:
            du = rep.evaluate(u)
            for (a, b), c in du.entries():
                term = v.scale(c)
                acc[(a, b)] = acc[(a, b)] + term if (a, b) in acc else term
    out = LMatrix("plus", alg, n, source="slice")
    for (a, b), x in acc.items():
        x = antipode(x * cartan_monomial(alg, rep.weights[b]), inverse=True)
        if x:
            out.entries[(a, b)] = x
    return out


# ---------------------------------------------------------------------------
# slice identities


def _cell_report(report: Report, name: str, got: SparseMatrix, want: dict) -> None:
    bad = []
    seen = set()
    for (c, d), x in got.entries():
        seen.add((c, d))
        if want.get((c, d)) != x:
            bad.append((c + 1, d + 1))
    for (c, d), x in want.items():
        if (c, d) not in seen and x:
            bad.append((c + 1, d + 1))
    report.add(name, not bad, f"mismatched cells (c,d) {sorted(bad)[:4]}" if bad else "")


def verify_slices(L: LMatrix, R: RMatrix, rep: Representation, rinv: SparseMatrix | None = None) -> Report:
    """(L-)^a_b(T^c_d) = R^{ca}_{db};  (L+)^a_b(T^c_d) = (R^-1)^{ac}_{bd}."""
    n = rep.dim
    report = Report(f"slice identities for L{'-' if L.kind == 'minus' else '+'} ({L.source}) in {rep.label}")
    if L.kind == "plus" and rinv is None:
        rinv = r_inverse_matrix(rep)
    for a in range(n):
        for b in range(n):
            got = rep.evaluate(L.get(a + 1, b + 1))
            want = {}
            for c in range(n):
                for d in range(n):
                    if L.kind == "minus":
                        x = R.matrix.get(c * n + a, d * n + b)
                    else:
                        x = rinv.get(a * n + c, b * n + d)
                    if x:
                        want[(c, d)] = x
            _cell_report(report, f"entry ({a + 1},{b + 1})", got, want)
    return report


def compare_lmatrices(x: LMatrix, y: LMatrix, reps: list[Representation]) -> Report:
    """Entrywise equality of two L-matrices under evaluation in each rep."""
    report = Report(f"L{'-' if x.kind == 'minus' else '+'} {x.source} vs {y.source}")
    n = x.dim
    for a in range(1, n + 1):
        for b in range(1, n + 1):
            diff = x.get(a, b) - y.get(a, b)
            bad = [r.label for r in reps if not r.evaluate(diff).is_zero()]
            report.add(f"entry ({a},{b})", not bad, f"differs in {bad}" if bad else "")
    return report


# ---------------------------------------------------------------------------
# A_N root vectors


def _require_a_series(alg: AlgebraSpec) -> None:
    if not alg.name.startswith("A"):
        raise ValueError("non-simple root vectors by q-commutators are only defined here for A_N")


def e_nonsimple(alg: AlgebraSpec, i: int, j: int, k: int | None = None) -> NcExpr:
    """E_{ij} by nested q-commutators.

    i < j: E_{i,i+1} = e_i and E_{ij} = E_{ik} E_{kj} - q E_{kj} E_{ik};
    i > j: E_{i+1,i} = f_i and E_{ij} = E_{ik} E_{kj} - q^-1 E_{kj} E_{ik},
    with k strictly between i and j (default: the neighbour of the smaller index).
    """
    _require_a_series(alg)
    n = alg.rank + 1
    if not (1 <= i <= n and 1 <= j <= n) or i == j:
        raise ValueError(f"E_({i},{j}) needs distinct indices in 1..{n}")
    lo, hi = min(i, j), max(i, j)
    if hi == lo + 1:
        return alg.e(lo) if i < j else alg.f(lo)
    if k is None:
        k = lo + 1
    if not lo < k < hi:
        raise ValueError("split index must lie strictly between i and j")
    x, y = e_nonsimple(alg, i, k), e_nonsimple(alg, k, j)
    c = alg.q(1) if i < j else alg.q(-1)
    return x * y - (y * x).scale(c)


def neighbour_classes(a: int, b: int) -> list[tuple[tuple[int, ...], int]]:
    """Representative letter sequences for the permutation classes of (a-1, ..., b).

    A class is fixed by the set of neighbouring pairs (c+1, c) whose order is
    swapped.  Building the word from a-1 downward, c goes to the far left
    when its pair is swapped and to the far right otherwise, so each chosen
    transposition is used once.  Returns (word, n(P)).
    """
    if a <= b:
        raise ValueError("need a > b")
    pairs = list(range(a - 2, b - 1, -1))  # c for the pair (c+1, c)
    out = []
    for size in range(len(pairs) + 1):
        for chosen in combinations(pairs, size):
            s = set(chosen)
            word = [a - 1]
            for c in pairs:
                word = [c] + word if c in s else word + [c]
            out.append((tuple(word), size))
    return out


def perm_sum_u(alg: AlgebraSpec, a: int, b: int) -> NcExpr:
    """-omega q^{a-b-1} sum_P (-q)^{-n(P)} e_{p1} ... e_{p(a-b)}."""
    _require_a_series(alg)
    if not 1 <= b < a <= alg.rank + 1:
        raise ValueError(f"perm_sum_u needs 1 <= b < a <= {alg.rank + 1}")
    sp = alg.scalars
    total = alg.zero()
    for word, npairs in neighbour_classes(a, b):
        c = (-alg.q(1)) ** (-npairs)
        total = total + alg.word(word).scale(c)
    return total.scale(-alg.omega(1) * alg.q(a - b - 1))
