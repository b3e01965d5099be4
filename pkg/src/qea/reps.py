"""Matrix representations, expression evaluation and relation checks.

Matrix convention: D(x)[r][c] is the coefficient of basis vector r in
x|c>.  Indices are 0-based internally; JSON and reports use 1-based indices.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .algebra import AlgebraSpec, NcExpr, a_n, antipode, coproduct, counit, g2, serre_element
from .matrix import SparseMatrix
from .report import Report
from .scalars import Scalar, SpecMismatchError, qbinom


class Representation:
    """Generators e_j, f_j as sparse matrices; t_j diagonal with weights.

    ``weights[a][j]`` is mu_j of basis vector a, so that t_j acts on it by
    q_j**mu_j.
    """

    def __init__(self, alg: AlgebraSpec, dim: int, e, f, weights, label: str = ""):
        self.alg = alg
        self.dim = dim
        self.e = tuple(e)
        self.f = tuple(f)
        self.weights = tuple(tuple(Fraction(x) for x in w) for w in weights)
        self.label = label
        self._words: dict = {}
        if len(self.e) != alg.rank or len(self.f) != alg.rank or len(self.weights) != dim:
            raise ValueError("representation data does not match the algebra rank/dimension")

    def __repr__(self) -> str:
        return f"Representation({self.alg.name}, dim={self.dim}, {self.label!r})"

    # -- t action ---------------------------------------------------------
    def t_vexp(self, a: int, k) -> int:
        """v-exponent of the eigenvalue of t**k (scaled exponents) on basis vector a."""
        total = Fraction(0)
        mu = self.weights[a]
        for j, kj in enumerate(k):
            if kj:
                total += self.alg.d[j] * mu[j] * kj
        if total.denominator != 1:
            raise ValueError(f"t-power not representable on basis vector {a + 1}")
        return int(total)

    def t_matrix(self, j: int, r=1) -> SparseMatrix:
        k = self.alg.scale_texp(Fraction(r) if i == j - 1 else 0 for i in range(self.alg.rank))
        sp = self.alg.scalars
        return SparseMatrix.diagonal([sp.v(self.t_vexp(a, k)) for a in range(self.dim)])

    def one(self) -> Scalar:
        return self.alg.scalars.one()

    def identity(self) -> SparseMatrix:
        return SparseMatrix.identity(self.dim, self.one())

    def zero(self) -> SparseMatrix:
        return SparseMatrix(self.dim, self.dim)

    # -- evaluation -------------------------------------------------------
    def letter_matrix(self, x: int) -> SparseMatrix:
        return self.e[x - 1] if x > 0 else self.f[-x - 1]

    def word_matrix(self, word) -> SparseMatrix:
        hit = self._words.get(word)
        if hit is not None:
            return hit
        if not word:
            m = self.identity()
        elif len(word) == 1:
            m = self.letter_matrix(word[0])
        else:
            m = self.letter_matrix(word[0]) @ self.word_matrix(word[1:])
        self._words[word] = m
        return m

    def evaluate(self, x: NcExpr) -> SparseMatrix:
        """D(x); an algebra homomorphism from expressions to matrices."""
        if x.alg is not self.alg:
            raise SpecMismatchError(f"{x.alg.name} expression in {self.alg.name} representation")
        out = SparseMatrix(self.dim, self.dim)
        for (w, k), c in x.terms.items():
            wm = self.word_matrix(w)
            shifts = [self.t_vexp(a, k) for a in range(self.dim)] if any(k) else None
            for r, row in wm.rows.items():
                for col, val in row.items():
                    term = val * c
                    if shifts is not None:
                        term = term.mul_vpow(shifts[col])
                    out.add_to(r, col, term)
        return out

    # -- json -------------------------------------------------------------
    def to_json(self) -> dict:
        def triplets(m: SparseMatrix):
            return [[r + 1, c + 1, v.to_json()] for (r, c), v in m.entries()]

        return {
            "algebra": self.alg.name,
            "label": self.label,
            "dim": self.dim,
            "weights": [[str(x) for x in w] for w in self.weights],
            "e": {str(j + 1): triplets(m) for j, m in enumerate(self.e)},
            "f": {str(j + 1): triplets(m) for j, m in enumerate(self.f)},
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @staticmethod
    def from_json(obj: dict, alg: AlgebraSpec) -> "Representation":
        n = obj["dim"]

        def mat(trips):
            return SparseMatrix.from_entries(
                n, n, (((r - 1, c - 1), Scalar.from_json(v, alg.scalars)) for r, c, v in trips)
            )

        e = [mat(obj["e"][str(j + 1)]) for j in range(alg.rank)]
        f = [mat(obj["f"][str(j + 1)]) for j in range(alg.rank)]
        weights = [[Fraction(x) for x in w] for w in obj["weights"]]
        return Representation(alg, n, e, f, weights, obj.get("label", ""))


def _unit(n: int, r: int, c: int, val) -> SparseMatrix:
    return SparseMatrix(n, n, {r: {c: val}})


def minimal_rep_an(N: int) -> Representation:
    """(N+1)-dim representation: e_j at (j, j+1), f_j at (j+1, j), 1-based."""
    alg = a_n(N)
    n = N + 1
    one = alg.scalars.one()
    e = [_unit(n, j - 1, j, one) for j in range(1, N + 1)]
    f = [_unit(n, j, j - 1, one) for j in range(1, N + 1)]
    weights = [[int(a == j) - int(a - 1 == j) for j in range(1, N + 1)] for a in range(1, n + 1)]
    return Representation(alg, n, e, f, weights, f"A{N} minimal")


def minimal_rep_g2() -> Representation:
    alg = g2()
    sp = alg.scalars
    one, s = sp.one(), sp.s()
    n = 7

    def mat(cells):
        return SparseMatrix.from_entries(n, n, (((r - 1, c - 1), v) for (r, c), v in cells))

    e1 = mat([((2, 3), one), ((5, 6), one)])
    f1 = mat([((3, 2), one), ((6, 5), one)])
    e2 = mat([((1, 2), one), ((6, 7), one), ((3, 4), s), ((4, 5), s)])
    f2 = mat([((2, 1), one), ((7, 6), one), ((4, 3), s), ((5, 4), s)])
    mu1 = [0, 1, -1, 0, 1, -1, 0]
    mu2 = [1, -1, 2, 0, -2, 1, -1]
    return Representation(alg, n, [e1, e2], [f1, f2], list(zip(mu1, mu2)), "G2 minimal")


def minimal_rep(alg: AlgebraSpec) -> Representation:
    if alg.name == "G2":
        return minimal_rep_g2()
    return minimal_rep_an(alg.rank)


def tensor_rep(r1: Representation, r2: Representation) -> Representation:
    """Generators act on V1 (x) V2 through the coproduct; index a*dim2 + b."""
    if r1.alg is not r2.alg:
        raise SpecMismatchError("tensor product of representations of different algebras")
    alg = r1.alg
    i1, i2 = r1.identity(), r2.identity()
    e, f = [], []
    for j in range(1, alg.rank + 1):
        e.append(r1.e[j - 1].kron(i2) + r1.t_matrix(j).kron(r2.e[j - 1]))
        f.append(r1.f[j - 1].kron(r2.t_matrix(j, -1)) + i1.kron(r2.f[j - 1]))
    weights = [
        tuple(x + y for x, y in zip(w1, w2)) for w1 in r1.weights for w2 in r2.weights
    ]
    label = f"({r1.label}) x ({r2.label})"
    return Representation(alg, r1.dim * r2.dim, e, f, weights, label)


def generator_list(alg: AlgebraSpec) -> list[tuple[str, NcExpr]]:
    out = []
    for j in range(1, alg.rank + 1):
        out += [(f"t{j}", alg.t(j)), (f"t{j}^-1", alg.t(j, -1)), (f"e{j}", alg.e(j)), (f"f{j}", alg.f(j))]
    return out


def _residual_text(m: SparseMatrix, limit: int = 3) -> str:
    cells = list(m.entries())[:limit]
    shown = ", ".join(f"({r + 1},{c + 1})={v!r}" for (r, c), v in cells)
    return f"nnz={m.nnz()} {shown}"


def check_relations(rep: Representation) -> Report:
    """All defining relations of U_q(g) as exact matrix identities."""
    alg = rep.alg
    sp = alg.scalars
    rk = alg.rank
    report = Report(f"relations in {rep.label or rep}")
    T = [rep.t_matrix(j) for j in range(1, rk + 1)]
    Tinv = [rep.t_matrix(j, -1) for j in range(1, rk + 1)]
    I = rep.identity()

    def record(name, resid):
        report.add(name, resid.is_zero(), "" if resid.is_zero() else _residual_text(resid))

    for i in range(rk):
        record(f"t{i + 1} t{i + 1}^-1 = 1", T[i] @ Tinv[i] - I)
        record(f"t{i + 1}^-1 t{i + 1} = 1", Tinv[i] @ T[i] - I)
        for j in range(rk):
            if i < j:
                record(f"t{i + 1} t{j + 1} = t{j + 1} t{i + 1}", T[i] @ T[j] - T[j] @ T[i])
            a = alg.cartan[i][j]
            qa = alg.qi(i + 1, a)
            record(f"t{i + 1} e{j + 1} = q{i + 1}^({a}) e{j + 1} t{i + 1}",
                   T[i] @ rep.e[j] - (rep.e[j] @ T[i]).scale(qa))
            record(f"t{i + 1} f{j + 1} = q{i + 1}^({-a}) f{j + 1} t{i + 1}",
                   T[i] @ rep.f[j] - (rep.f[j] @ T[i]).scale(qa.inverse()))
    for i in range(rk):
        for j in range(rk):
            lhs = rep.e[i] @ rep.f[j] - rep.f[j] @ rep.e[i]
            if i == j:
                rhs = (T[j] - Tinv[j]).scale(alg.omega(j + 1).inverse())
            else:
                rhs = SparseMatrix(rep.dim, rep.dim)
            record(f"[e{i + 1}, f{j + 1}]", lhs - rhs)
    for kind, mats in (("e", rep.e), ("f", rep.f)):
        for i in range(rk):
            for j in range(rk):
                if i == j:
                    continue
                m = 1 - alg.cartan[i][j]
                acc = SparseMatrix(rep.dim, rep.dim)
                for n in range(m + 1):
                    c = qbinom(m, n, alg.d[i], sp)
                    if n % 2:
                        c = -c
                    prod = _power(mats[i], m - n, I) @ mats[j] @ _power(mats[i], n, I)
                    acc = acc + prod.scale(c)
                record(f"Serre {kind}({i + 1},{j + 1}) degree {m + 1}", acc)
    return report


def _power(m: SparseMatrix, n: int, ident: SparseMatrix) -> SparseMatrix:
    out = ident
    for _ in range(n):
        out = out @ m
    return out


def check_hopf(rep: Representation) -> Report:
    """m(S (x) id) Delta(x) = eps(x) 1 = m(id (x) S) Delta(x) on generators, in ``rep``."""
    alg = rep.alg
    report = Report(f"Hopf antipode axiom in {rep.label or rep}")
    I = rep.identity()
    for name, x in generator_list(alg):
        d = coproduct(x)
        left = d.apply_slot(0, antipode).multiply_out()
        right = d.apply_slot(1, antipode).multiply_out()
        target = I.scale(counit(x))
        for side, expr in (("S(x)1 x2", left), ("x1 S(x2)", right)):
            resid = rep.evaluate(expr) - target
            report.add(f"{side} for {name}", resid.is_zero(), _residual_text(resid))
    return report


def serre_elements(alg: AlgebraSpec, kind: str = "e") -> list[tuple[tuple[int, int], NcExpr]]:
    return [
        ((i, j), serre_element(alg, i, j, kind))
        for i in range(1, alg.rank + 1)
        for j in range(1, alg.rank + 1)
        if i != j
    ]


def evaluate_expr(x: NcExpr, rep: Representation) -> SparseMatrix:
    """D(x) in ``rep``."""
    return rep.evaluate(x)


OperatorMatrix = dict  # (a, b) -> NcExpr; the L-matrices wrap this in LMatrix


def matrix_latex(m: SparseMatrix, fmt=None) -> str:
    """Dense pmatrix; entries formatted with ``fmt`` (scalar_latex by default)."""
    from .scalars import scalar_latex

    fmt = fmt or scalar_latex
    rows = []
    for r in range(m.nrows):
        row = m.rows.get(r, {})
        rows.append(" & ".join(fmt(row[c]) if c in row else "0" for c in range(m.ncols)))
    return "\\begin{pmatrix}\n" + " \\\\\n".join(rows) + "\n\\end{pmatrix}"


def rep_latex(rep: Representation) -> str:
    out = []
    for j in range(rep.alg.rank):
        out.append(f"D(e_{{{j + 1}}}) = " + matrix_latex(rep.e[j]))
        out.append(f"D(f_{{{j + 1}}}) = " + matrix_latex(rep.f[j]))
    for j in range(1, rep.alg.rank + 1):
        out.append(f"D(t_{{{j}}}) = " + matrix_latex(rep.t_matrix(j)))
    return "\n".join(out)
