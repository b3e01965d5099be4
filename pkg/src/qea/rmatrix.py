"""R-matrix on V (x) V assembled from the truncated universal R.

    R = (sum_beta sum_i u^i (x) v_i) q^{-H}

with u^i e-words (first slot) and v_i f-words (second slot).  Matrix layout
is the Kronecker one: row (c, a) -> c*n + a, column (d, b) -> d*n + b, so
R[c*n + a, d*n + b] is the cell written R^{ca}_{db}.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .algebra import AlgebraSpec, NcExpr, TensorExpr, antipode, coproduct
from .matrix import SparseMatrix, invert_dense, swap_permutation
from .pairing import DualPairSet, dual_pair_basis, max_beta_height
from .report import Report
from .reps import Representation, generator_list
from .scalars import Scalar, eval_at_point

DEFAULT_POINTS = (Fraction(2), Fraction(3, 2), Fraction(5, 3))


class TruncationError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Cartan part


def cartan_factor(alg: AlgebraSpec, nu) -> tuple[Fraction, ...]:
    """t-exponents c = -a^{-1} nu.

    prod_j t_j^{c_j} acting on a weight-mu vector gives
    q^{-sum_ij d_i (a^-1)_ij mu_i nu_j}, i.e. q^{-H} restricted to a fixed
    weight nu in the other slot.
    """
    inv = alg.inv_cartan
    r = alg.rank
    return tuple(-sum((inv[i][j] * Fraction(nu[j]) for j in range(r)), Fraction(0)) for i in range(r))


def cartan_monomial(alg: AlgebraSpec, nu) -> NcExpr:
    return alg.tmono(cartan_factor(alg, nu))


def qh_vexp(alg: AlgebraSpec, mu, nu) -> int:
    """v-exponent of q^{-H} on v_mu (x) v_nu."""
    total = Fraction(0)
    inv = alg.inv_cartan
    for i in range(alg.rank):
        for j in range(alg.rank):
            total += alg.d[i] * inv[i][j] * Fraction(mu[i]) * Fraction(nu[j])
    total = -total * alg.L
    if total.denominator != 1:
        raise ValueError("q^{-H} value not representable")
    return int(total)


def qh_diagonal(rep: Representation, sign: int = 1) -> list[Scalar]:
    """Diagonal of q^{-H} (sign=1) or q^{H} (sign=-1) on rep (x) rep."""
    sp = rep.alg.scalars
    return [
        sp.v(sign * qh_vexp(rep.alg, mu, nu)) for mu in rep.weights for nu in rep.weights
    ]


# ---------------------------------------------------------------------------
# which beta are needed


def root_coordinates(alg: AlgebraSpec, dmu) -> tuple[Fraction, ...]:
    """Solve a.beta = dmu (weights are given in fundamental-weight coordinates)."""
    inv = alg.inv_cartan
    r = alg.rank
    return tuple(sum((inv[i][j] * Fraction(dmu[j]) for j in range(r)), Fraction(0)) for i in range(r))


def needed_betas(rep: Representation) -> list[tuple[int, ...]]:
    """All beta in Q+ that occur as a weight difference of ``rep``."""
    out = set()
    for wa in rep.weights:
        for wb in rep.weights:
            beta = root_coordinates(rep.alg, [x - y for x, y in zip(wa, wb)])
            if all(x.denominator == 1 and x >= 0 for x in beta):
                out.add(tuple(int(x) for x in beta))
    return sorted(out, key=lambda b: (sum(b), b))


def terms_for(rep: Representation, max_height: int | None = None) -> list[DualPairSet]:
    bound = max_beta_height() if max_height is None else max_height
    betas = needed_betas(rep)
    missing = [b for b in betas if sum(b) > bound]
    if missing:
        raise TruncationError(
            f"truncation height {bound} is too low for {rep.label}: missing beta {missing[0]}"
            " (raise QEA_MAX_BETA_HEIGHT)"
        )
    return [dual_pair_basis(rep.alg, b) for b in betas]


# ---------------------------------------------------------------------------
# R itself


@dataclass
class RMatrix:
    alg: AlgebraSpec
    dim: int
    matrix: SparseMatrix
    label: str = ""

    def cell(self, c: int, a: int, d: int, b: int):
        """R^{ca}_{db}, 0-based indices."""
        n = self.dim
        return self.matrix.get(c * n + a, d * n + b)

    def at(self, v0) -> SparseMatrix:
        return self.matrix.map(lambda x: eval_at_point(x, v0))

    def to_json(self) -> dict:
        n = self.dim
        return {
            "algebra": self.alg.name,
            "dim": n,
            "layout": "row (c,a) -> c*n+a, column (d,b) -> d*n+b, indices 1-based",
            "entries": [
                [r // n + 1, r % n + 1, c // n + 1, c % n + 1, v.to_json()]
                for (r, c), v in self.matrix.entries()
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def evaluate_tensor(reps: list[Representation], x: TensorExpr) -> SparseMatrix:
    """(D1 (x) D2 (x) ...)(x) as a Kronecker-layout matrix."""
    if len(reps) != x.arity:
        raise ValueError("one representation per tensor slot is needed")
    alg = reps[0].alg
    out = None
    for keys, c in x.terms.items():
        m = None
        for rep, key in zip(reps, keys):
            f = rep.evaluate(NcExpr(alg, {key: alg.scalars.one()}))
            m = f if m is None else m.kron(f)
        m = m.scale(c)
        out = m if out is None else out + m
    if out is None:
        n = 1
        for rep in reps:
            n *= rep.dim
        out = SparseMatrix(n, n)
    return out


def lbeta_matrix(rep: Representation, terms: list[DualPairSet]) -> SparseMatrix:
    """sum_beta sum_i D(u^i) (x) D(v_i)."""
    n = rep.dim
    out = SparseMatrix(n * n, n * n)
    for dps in terms:
        for u, v in dps.terms:
            du = rep.evaluate(u)
            if du.is_zero():
                continue
            dv = rep.evaluate(v)
            if dv.is_zero():
                continue
            out = out + du.kron(dv)
    return out


def build_r(rep: Representation, max_height: int | None = None) -> RMatrix:
    terms = terms_for(rep, max_height)
    m = lbeta_matrix(rep, terms).scale_columns(qh_diagonal(rep))
    return RMatrix(rep.alg, rep.dim, m, rep.label)


# ---------------------------------------------------------------------------
# checks


def _summary(m: SparseMatrix, n: int | None = None, limit: int = 3) -> str:
    if m.is_zero():
        return ""
    cells = []
    for (r, c), v in list(m.entries())[:limit]:
        cells.append(f"[{r + 1},{c + 1}]")
    return f"nonzero residual at {', '.join(cells)} (nnz={m.nnz()})"


def check_intertwiner(R: RMatrix, rep: Representation) -> Report:
    """R Delta(g) = Delta^op(g) R on V (x) V for every generator g."""
    report = Report(f"intertwiner R Delta = Delta^op R in {rep.label}")
    for name, g in generator_list(rep.alg):
        d = coproduct(g)
        lhs = R.matrix @ evaluate_tensor([rep, rep], d)
        rhs = evaluate_tensor([rep, rep], d.flip()) @ R.matrix
        resid = lhs - rhs
        report.add(f"generator {name}", resid.is_zero(), _summary(resid))
    return report


def _ybe_sides(r: SparseMatrix, n: int, one) -> tuple[SparseMatrix, SparseMatrix]:
    ident = SparseMatrix.identity(n, one)
    r12 = r.kron(ident)
    r23 = ident.kron(r)
    # swap slots 2 and 3 of V (x) V (x) V
    perm = [a * n * n + c * n + b for a in range(n) for b in range(n) for c in range(n)]
    r13 = r12.permute(perm)
    return r12 @ r13 @ r23, r23 @ r13 @ r12


def check_ybe(R: RMatrix, points=None, exact: bool | None = None) -> Report:
    """R12 R13 R23 = R23 R13 R12.

    Exact over the function field by default for A-series; G2 defaults to
    exact evaluation at rational points (quadratic number field arithmetic).
    """
    if exact is None:
        exact = R.alg.name != "G2"
    report = Report(f"Yang-Baxter equation for {R.label}")
    n = R.dim
    if exact:
        lhs, rhs = _ybe_sides(R.matrix, n, R.alg.scalars.one())
        resid = lhs - rhs
        report.add("exact", resid.is_zero(), _summary(resid))
    for v0 in points if points is not None else (() if exact else DEFAULT_POINTS):
        m = R.at(v0)
        one = eval_at_point(R.alg.scalars.one(), v0)
        lhs, rhs = _ybe_sides(m, n, one)
        resid = lhs - rhs
        report.add(f"at v={v0}", resid.is_zero(), _summary(resid))
    return report


def r_inverse_matrix(rep: Representation, max_height: int | None = None) -> SparseMatrix:
    """(id (x) S^-1) R = sum_i (D(u^i) (x) 1) q^{H} (1 (x) D(S^-1 v_i))."""
    n = rep.dim
    terms = terms_for(rep, max_height)
    ident = rep.identity()
    qplus = SparseMatrix.diagonal(qh_diagonal(rep, sign=-1))
    out = SparseMatrix(n * n, n * n)
    for dps in terms:
        for u, v in dps.terms:
            du = rep.evaluate(u)
            if du.is_zero():
                continue
            dv = rep.evaluate(antipode(v, inverse=True))
            if dv.is_zero():
                continue
            out = out + du.kron(ident) @ qplus @ ident.kron(dv)
    return out


def blockwise_inverse(R: RMatrix, rep: Representation) -> SparseMatrix:
    """Exact inverse of R computed independently, one total-weight sector at a time."""
    n = R.dim
    sectors: dict = {}
    for c in range(n):
        for a in range(n):
            w = tuple(x + y for x, y in zip(rep.weights[c], rep.weights[a]))
            sectors.setdefault(w, []).append(c * n + a)
    sp = R.alg.scalars
    out = SparseMatrix(n * n, n * n)
    for idx in sectors.values():
        block = [[R.matrix.get(r, c, sp.zero()) for c in idx] for r in idx]
        inv = invert_dense(block, sp.one())
        for i, r in enumerate(idx):
            for j, c in enumerate(idx):
                out.add_to(r, c, inv[i][j])
    return out


def r_inverse_via_antipode(rep: Representation, points=None, exact: bool = True,
                           max_height: int | None = None) -> Report:
    """M R = R M = 1 for M assembled from (id (x) S^-1) R; also M = blockwise inverse."""
    report = Report(f"R^-1 = (id x S^-1) R in {rep.label}")
    R = build_r(rep, max_height)
    M = r_inverse_matrix(rep, max_height)
    nn = rep.dim * rep.dim
    if exact:
        one = rep.alg.scalars.one()
        ident = SparseMatrix.identity(nn, one)
        for name, resid in (("M R = 1", M @ R.matrix - ident), ("R M = 1", R.matrix @ M - ident)):
            report.add(name, resid.is_zero(), _summary(resid))
        resid = M - blockwise_inverse(R, rep)
        report.add("M equals the sector-wise inverse of R", resid.is_zero(), _summary(resid))
    for v0 in points or ():
        ev = lambda x: eval_at_point(x, v0)
        Rm, Mm = R.matrix.map(ev), M.map(ev)
        ident = SparseMatrix.identity(nn, ev(rep.alg.scalars.one()))
        resid = Mm @ Rm - ident
        report.add(f"M R = 1 at v={v0}", resid.is_zero(), _summary(resid))
        resid = Rm @ Mm - ident
        report.add(f"R M = 1 at v={v0}", resid.is_zero(), _summary(resid))
    return report


def check_structure(R: RMatrix, rep: Representation) -> Report:
    """Weight conservation and triangularity of R q^{H}."""
    report = Report(f"weight structure of R for {rep.label}")
    n = R.dim
    w = rep.weights

    def total(c, a):
        return tuple(x + y for x, y in zip(w[c], w[a]))

    bad_weight = []
    bad_tri = []
    L = R.matrix.scale_columns(qh_diagonal(rep, sign=-1))
    for (r, col), _ in L.entries():
        c, a, d, b = r // n, r % n, col // n, col % n
        if total(c, a) != total(d, b):
            bad_weight.append((c + 1, a + 1, d + 1, b + 1))
        if (c, a) == (d, b):
            if L.get(r, col) != R.alg.scalars.one():
                bad_tri.append((c + 1, a + 1, d + 1, b + 1))
        else:
            beta = root_coordinates(R.alg, [x - y for x, y in zip(w[c], w[d])])
            if not (all(x >= 0 for x in beta) and any(x > 0 for x in beta)):
                bad_tri.append((c + 1, a + 1, d + 1, b + 1))
    report.add("weight conservation", not bad_weight, f"violations {bad_weight[:3]}" if bad_weight else "")
    report.add("R q^H is unipotent, raising the first slot", not bad_tri,
               f"violations {bad_tri[:3]}" if bad_tri else "")
    return report


def highest_weight_anchor(R: RMatrix, rep: Representation) -> bool:
    """Diagonal cell at highest (x) highest equals the pure q^{-H} value."""
    h = 0
    mu = rep.weights[h]
    n = R.dim
    expected = R.alg.scalars.v(qh_vexp(R.alg, mu, mu))
    return R.matrix.get(h * n + h, h * n + h) == expected
