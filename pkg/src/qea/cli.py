"""Command-line front end.

    qea relations --algebra g2
    qea rmatrix   --algebra aN:2 --format latex
    qea lop       --algebra g2 --kind minus --a 5 --b 3 --source catalog
    qea verify    --algebra a1 --suite all
    qea eval      --algebra g2 --expr x.json --rep tensor2

Exit codes: 0 all checks pass, 1 a verification failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .algebra import NcExpr, algebra_from_name, expr_latex
from .catalog import catalog_an, catalog_g2, catalog_latex, catalog_lmatrix, minus_to_plus_transform
from .lops import compare_lmatrices, e_nonsimple, lminus_from_r, lplus_from_r, perm_sum_u, verify_slices
from .pairing import radical_defects, serre_ideal_elements
from .report import Report
from .reps import check_hopf, check_relations, matrix_latex, minimal_rep, tensor_rep
from .rmatrix import (
    TruncationError,
    build_r,
    cartan_factor,
    cartan_monomial,
    check_intertwiner,
    check_structure,
    check_ybe,
    qh_diagonal,
    r_inverse_matrix,
    r_inverse_via_antipode,
)
from .scalars import eval_at_point, scalar_latex

SUITES = ("relations", "ybe", "slice", "catalog", "perm", "transform", "inverse", "qh", "radical")


class UsageError(Exception):
    pass


def _parse_point(text: str | None) -> Fraction | None:
    if text is None:
        return None
    key, _, val = text.partition("=")
    if key.strip() != "v" or not val:
        raise UsageError(f"--at expects v=p/q, got {text!r}")
    try:
        v0 = Fraction(val.strip())
    except ValueError as exc:
        raise UsageError(f"bad rational in --at: {val!r}") from exc
    if v0 == 0:
        raise UsageError("--at v=0 is not allowed")
    return v0


def _algebra(name: str):
    try:
        return algebra_from_name(name)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


# ---------------------------------------------------------------------------
# suites


def suite_relations(alg, args) -> list[Report]:
    rep = minimal_rep(alg)
    out = [check_relations(rep), check_hopf(rep)]
    t2 = tensor_rep(rep, rep)
    out += [check_relations(t2), check_hopf(t2)]
    return out


def suite_ybe(alg, args) -> list[Report]:
    rep = minimal_rep(alg)
    R = build_r(rep)
    points = [args.point] if args.point is not None else None
    exact = True if args.exact else (False if args.point is not None else None)
    return [check_intertwiner(R, rep), check_ybe(R, points=points, exact=exact)]


def suite_slice(alg, args) -> list[Report]:
    rep = minimal_rep(alg)
    R = build_r(rep)
    rinv = r_inverse_matrix(rep)
    return [
        check_structure(R, rep),
        verify_slices(lminus_from_r(rep), R, rep),
        verify_slices(lplus_from_r(rep), R, rep, rinv),
    ]


def suite_catalog(alg, args) -> list[Report]:
    rep = minimal_rep(alg)
    R = build_r(rep)
    rinv = r_inverse_matrix(rep)
    reps = [rep, tensor_rep(rep, rep)]
    out = []
    for kind, sliced in (("minus", lminus_from_r(rep)), ("plus", lplus_from_r(rep))):
        cat = catalog_lmatrix(alg, kind, args.variant)
        out.append(verify_slices(cat, R, rep, rinv))
        out.append(compare_lmatrices(sliced, cat, reps))
    return out


def suite_perm(alg, args) -> list[Report]:
    report = Report("permutation sum equals (-1)^(a-b) omega E_ba")
    if alg.name == "G2":
        report.add("not applicable to G2", True)
        return [report]
    rep = minimal_rep(alg)
    reps = [rep, tensor_rep(rep, rep)]
    n = alg.rank + 1
    for a in range(2, n + 1):
        for b in range(max(1, a - 4), a):
            diff = perm_sum_u(alg, a, b) - e_nonsimple(alg, b, a).scale(alg.omega(1) * (-1) ** (a - b))
            bad = [r.label for r in reps if not r.evaluate(diff).is_zero()]
            report.add(f"(a,b)=({a},{b})", not bad, f"differs in {bad}" if bad else "")
    return [report]


def suite_transform(alg, args) -> list[Report]:
    rep = minimal_rep(alg)
    reps = [rep, tensor_rep(rep, rep)]
    n = rep.dim
    sl_minus, sl_plus = lminus_from_r(rep), lplus_from_r(rep)
    cat_minus = catalog_lmatrix(alg, "minus", args.variant)
    cat_plus = catalog_lmatrix(alg, "plus", args.variant)
    out = []
    for label, lm, lp in (("catalog", cat_minus, cat_plus), ("slice", sl_minus, sl_plus)):
        report = Report(f"transform(L-(b,a)) = L+(a,b), {label}")
        for a in range(1, n + 1):
            for b in range(1, n + 1):
                x = minus_to_plus_transform(lm.get(b, a))
                diff = x - lp.get(a, b)
                bad = [r.label for r in reps if not r.evaluate(diff).is_zero()]
                report.add(f"({a},{b})", not bad, f"differs in {bad}" if bad else "")
        out.append(report)
    inv = Report("transform is an involution on catalog entries")
    for a in range(1, n + 1):
        for b in range(1, n + 1):
            x = cat_minus.get(a, b)
            inv.add(f"({a},{b})", minus_to_plus_transform(minus_to_plus_transform(x)) == x)
    out.append(inv)
    return out


def suite_inverse(alg, args) -> list[Report]:
    rep = minimal_rep(alg)
    points = [args.point] if args.point is not None else None
    return [r_inverse_via_antipode(rep, points=points, exact=True)]


def suite_qh(alg, args) -> list[Report]:
    rep = minimal_rep(alg)
    report = Report(f"q^-H as a t-monomial in the first slot for {alg.name}")
    n = rep.dim
    diag = qh_diagonal(rep)
    for b in range(n):
        T = rep.evaluate(cartan_monomial(alg, rep.weights[b]))
        ok = all(T.get(a, a) == diag[a * n + b] for a in range(n))
        report.add(f"column {b + 1}: monomial reproduces q^-H", ok)
        if alg.name != "G2":
            N = alg.rank
            tau = tuple(Fraction(j, N + 1) - (1 if j >= b + 1 else 0) for j in range(1, N + 1))
            c = cartan_factor(alg, rep.weights[b])
            report.add(f"column {b + 1}: tau", c == tau, f"got {c}, expected {tau}" if c != tau else "")
    return [report]


def suite_radical(alg, args) -> list[Report]:
    height = 6 if alg.name == "G2" else 4
    report = Report(f"Serre ideal in the pairing radical (height <= {height})")
    for kind in ("e", "f"):
        for label, x in serre_ideal_elements(alg, height, kind):
            bad = radical_defects(x)
            report.add(label, not bad, f"pairs with {bad[:2]}" if bad else "")
    return [report]


SUITE_FUNCS = {
    "relations": suite_relations,
    "ybe": suite_ybe,
    "slice": suite_slice,
    "catalog": suite_catalog,
    "perm": suite_perm,
    "transform": suite_transform,
    "inverse": suite_inverse,
    "qh": suite_qh,
    "radical": suite_radical,
}


# ---------------------------------------------------------------------------
# commands


def _emit(args, text: str) -> None:
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _reports_text(reports: list[Report], args) -> str:
    if args.format == "json":
        data = [
            {
                "title": r.title,
                "ok": r.ok,
                "checks": [{"name": c.name, "ok": c.ok, "detail": c.detail} for c in r.checks],
            }
            for r in reports
        ]
        return json.dumps(data, indent=1, sort_keys=True)
    lines = []
    for r in reports:
        lines += r.lines(verbose=args.verbose)
    ok = all(r.ok for r in reports)
    lines.append(f"overall: {'PASS' if ok else 'FAIL'}")
    return "\n".join(lines)


def cmd_relations(alg, args) -> int:
    reports = suite_relations(alg, args)
    _emit(args, _reports_text(reports, args))
    return 0 if all(r.ok for r in reports) else 1


def cmd_verify(alg, args) -> int:
    names = SUITES if args.suite == "all" else (args.suite,)
    reports = []
    for name in names:
        reports += SUITE_FUNCS[name](alg, args)
    _emit(args, _reports_text(reports, args))
    return 0 if all(r.ok for r in reports) else 1


def cmd_rmatrix(alg, args) -> int:
    rep = minimal_rep(alg)
    R = build_r(rep)
    n = R.dim
    if args.point is not None:
        m = R.at(args.point)
        if args.format == "latex":
            text = matrix_latex(m, fmt=str)
        else:
            text = json.dumps(
                {
                    "algebra": alg.name,
                    "dim": n,
                    "at": str(args.point),
                    "entries": [
                        [r // n + 1, r % n + 1, c // n + 1, c % n + 1, str(x)]
                        for (r, c), x in m.entries()
                    ],
                },
                sort_keys=True,
            )
    elif args.format == "latex":
        lines = []
        for (r, c), x in R.matrix.entries():
            lines.append(
                f"R^{{{r // n + 1}{r % n + 1}}}_{{{c // n + 1}{c % n + 1}}} = {scalar_latex(x)}"
            )
        text = "\n".join(lines)
    else:
        text = R.dumps()
    _emit(args, text)
    return 0


def _lop_entry(alg, args, a: int, b: int) -> tuple[NcExpr, str]:
    if args.source == "catalog":
        if alg.name == "G2":
            x = catalog_g2(args.kind, a, b)
        else:
            x = catalog_an(args.kind, a, b, alg.rank, args.variant)
        return x, catalog_latex(alg, args.kind, a, b, args.variant)
    rep = minimal_rep(alg)
    L = lminus_from_r(rep) if args.kind == "minus" else lplus_from_r(rep)
    x = L.get(a, b)
    return x, expr_latex(x)


def cmd_lop(alg, args) -> int:
    n = 7 if alg.name == "G2" else alg.rank + 1
    if (args.a is None) != (args.b is None):
        raise UsageError("--a and --b must be given together")
    cells = [(args.a, args.b)] if args.a is not None else [
        (a, b) for a in range(1, n + 1) for b in range(1, n + 1)
    ]
    for a, b in cells:
        if not (1 <= a <= n and 1 <= b <= n):
            raise UsageError(f"indices must lie in 1..{n}")
    sign = "-" if args.kind == "minus" else "+"
    out = []
    for a, b in cells:
        x, tex = _lop_entry(alg, args, a, b)
        if args.format == "latex":
            out.append(f"\\left(L^{{{sign}}}\\right)^{{{a}}}_{{~{b}}} = {tex}")
        else:
            out.append({"kind": args.kind, "a": a, "b": b, "source": args.source, "expr": x.to_json()})
    text = "\n".join(out) if args.format == "latex" else json.dumps(
        out[0] if len(out) == 1 else out, sort_keys=True
    )
    _emit(args, text)
    return 0


def cmd_eval(alg, args) -> int:
    try:
        with open(args.expr, encoding="utf-8") as fh:
            data = json.load(fh)
        x = NcExpr.from_json(data, alg)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read expression from {args.expr}: {exc}") from exc
    rep = minimal_rep(alg)
    if args.rep == "tensor2":
        rep = tensor_rep(rep, rep)
    m = rep.evaluate(x)
    if args.point is not None:
        m = m.map(lambda s: eval_at_point(s, args.point))
        fmt = str
        payload = lambda s: str(s)
    else:
        fmt = None
        payload = lambda s: s.to_json()
    if args.format == "latex":
        text = matrix_latex(m, fmt=fmt)
    else:
        text = json.dumps(
            {"dim": m.nrows, "entries": [[r + 1, c + 1, payload(s)] for (r, c), s in m.entries()]},
            sort_keys=True,
        )
    _emit(args, text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--algebra", default="a1", help="a1, a2, ..., aN:<N> or g2")
    common.add_argument("--format", choices=("json", "latex", "text"), default=None)
    common.add_argument("--output", "-o", default=None, help="write to this file instead of stdout")
    common.add_argument("--variant", choices=("printed", "derived"), default="printed",
                        help="sign convention for the A_N closed forms")

    p = argparse.ArgumentParser(prog="qea", description="Quantum enveloping algebra R-matrices and L-operators")
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("relations", parents=[common], help="check defining relations and Hopf axioms").add_argument(
        "--verbose", "-v", action="store_true")

    pr = sub.add_parser("rmatrix", parents=[common], help="build and print R on V x V")
    pr.add_argument("--at", dest="at", default=None, help="evaluate at v=p/q")

    pl = sub.add_parser("lop", parents=[common], help="print L-operator entries")
    pl.add_argument("--kind", choices=("minus", "plus"), required=True)
    pl.add_argument("--a", type=int, default=None)
    pl.add_argument("--b", type=int, default=None)
    pl.add_argument("--source", choices=("slice", "catalog"), default="catalog")

    pv = sub.add_parser("verify", parents=[common], help="run verification suites")
    pv.add_argument("--suite", choices=SUITES + ("all",), default="all")
    pv.add_argument("--at", dest="at", default=None, help="evaluate at v=p/q")
    pv.add_argument("--exact", action="store_true", help="exact function-field arithmetic everywhere")
    pv.add_argument("--verbose", "-v", action="store_true")

    pe = sub.add_parser("eval", parents=[common], help="evaluate an NcExpr JSON file in a representation")
    pe.add_argument("--expr", required=True)
    pe.add_argument("--rep", choices=("minimal", "tensor2"), default="minimal")
    pe.add_argument("--at", dest="at", default=None, help="evaluate at v=p/q")
    return p


COMMANDS = {
    "relations": cmd_relations,
    "rmatrix": cmd_rmatrix,
    "lop": cmd_lop,
    "verify": cmd_verify,
    "eval": cmd_eval,
}


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.point = _parse_point(getattr(args, "at", None))
        if not hasattr(args, "verbose"):
            args.verbose = False
        if args.format is None:
            args.format = "text" if args.command in ("relations", "verify") else "json"
        if args.format == "text" and args.command not in ("relations", "verify"):
            raise UsageError("--format text is only for report commands")
        alg = _algebra(args.algebra)
        return COMMANDS[args.command](alg, args)
    except (UsageError, TruncationError) as exc:
        sys.stderr.write(f"qea: error: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
