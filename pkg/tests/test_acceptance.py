"""Acceptance criteria AC-1 .. AC-10.

Each test prints one PASS/FAIL line (also collected into the terminal
summary) and then asserts.  All checks are exact.
"""

import time
from fractions import Fraction
from itertools import product

from conftest import ACCEPTANCE_LINES

from qea.algebra import a_n, antipode, coproduct, counit, g2
from qea.catalog import G2_PLUS_DISPLAYED, catalog_g2, catalog_lmatrix, minus_to_plus_transform
from qea.lops import compare_lmatrices, e_nonsimple, lminus_from_r, lplus_from_r, perm_sum_u, verify_slices
from qea.pairing import radical_defects, serre_ideal_elements
from qea.reps import check_hopf, check_relations, minimal_rep, tensor_rep
from qea.rmatrix import build_r, cartan_factor, check_ybe, r_inverse_matrix, r_inverse_via_antipode

POINTS = [Fraction(2), Fraction(3, 2), Fraction(5, 3)]


def record(ac, ok, start, budget=None, detail=""):
    elapsed = time.perf_counter() - start
    in_time = budget is None or elapsed < budget
    status = "PASS" if ok and in_time else "FAIL"
    limit = f" / {budget:g}s" if budget is not None else ""
    line = f"{ac} {status} [{elapsed:.1f}s{limit}] {detail}".rstrip()
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, line
    assert in_time, line


def failed_entries(report):
    return [c.name.replace("entry ", "") for c in report.failures()]


def reps_for(alg):
    rep = minimal_rep(alg)
    return [rep, tensor_rep(rep, rep)]


def test_ac1_relations():
    start = time.perf_counter()
    bad = []
    for alg in (a_n(1), a_n(2), a_n(3), a_n(4), g2()):
        report = check_relations(minimal_rep(alg))
        if not report.ok:
            bad.append(f"{alg.name}: {[c.name for c in report.failures()][:3]}")
    record("AC-1", not bad, start, 10, "; ".join(bad) or "A1-A4 and G2 minimal reps, all relations exact")


def _words(alg, max_len):
    letters = [j for i in range(1, alg.rank + 1) for j in (i, -i)]
    for n in range(max_len + 1):
        yield from product(letters, repeat=n)


def test_ac2_hopf():
    start = time.perf_counter()
    bad = []
    for alg in (a_n(1), a_n(2), a_n(3), a_n(4), g2()):
        for rep in reps_for(alg):
            if not check_hopf(rep).ok:
                bad.append(f"check_hopf {rep.label}")
    count = 0
    for alg in (a_n(1), a_n(2), g2()):
        t = alg.t(1)
        for w in _words(alg, 4):
            for x in (alg.word(w), alg.word(w) * t):
                count += 1
                d = coproduct(x)
                if d.apply_slot(0, coproduct) != d.apply_slot(1, coproduct):
                    bad.append(f"coassociativity {alg.name} {w}")
                if d.apply_slot(0, counit).as_expr() != x or d.apply_slot(1, counit).as_expr() != x:
                    bad.append(f"counit {alg.name} {w}")
                if antipode(antipode(x), inverse=True) != x or antipode(antipode(x, inverse=True)) != x:
                    bad.append(f"antipode inverse {alg.name} {w}")
    record("AC-2", not bad, start, 30, "; ".join(bad[:3]) or f"check_hopf on all reps, {count} words of length <= 4")


def test_ac3_slice_identity_catalog():
    parts = []
    ok = True
    start = time.perf_counter()
    for N in (1, 2, 3):
        alg = a_n(N)
        rep = minimal_rep(alg)
        R = build_r(rep)
        rinv = r_inverse_matrix(rep)
        bad = []
        for kind, sign in (("minus", "L-"), ("plus", "L+")):
            report = verify_slices(catalog_lmatrix(alg, kind, "printed"), R, rep, rinv)
            bad += [f"{sign}{e}" for e in failed_entries(report)]
        ok &= not bad
        parts.append(f"A{N} {'pass' if not bad else 'fail at ' + ' '.join(bad)}")
    a_time = time.perf_counter() - start
    g_start = time.perf_counter()
    alg = g2()
    rep = minimal_rep(alg)
    R = build_r(rep)
    rinv = r_inverse_matrix(rep)
    bad = []
    for kind, sign in (("minus", "L-"), ("plus", "L+")):
        report = verify_slices(catalog_lmatrix(alg, kind), R, rep, rinv)
        bad += [f"{sign}{e}" for e in failed_entries(report)]
    g_time = time.perf_counter() - g_start
    ok &= not bad
    parts.append(f"G2 {'pass' if not bad else 'fail at ' + ' '.join(bad)}")
    in_time = a_time < 60 and g_time < 600
    record("AC-3", ok and in_time, start, None,
           f"A-series {a_time:.1f}s/60s, G2 {g_time:.1f}s/600s; " + "; ".join(parts))


def test_ac4_pipeline_equals_catalog():
    start = time.perf_counter()
    parts = []
    ok = True
    for alg in (a_n(2), g2()):
        reps = reps_for(alg)
        report = compare_lmatrices(lminus_from_r(reps[0]), catalog_lmatrix(alg, "minus", "printed"), reps)
        bad = failed_entries(report)
        ok &= not bad
        parts.append(f"{alg.name} {'pass' if not bad else 'fail at L-' + ' L-'.join(bad)}")
    record("AC-4", ok, start, 900, "minimal and tensor-square; " + "; ".join(parts))


def test_ac5_ybe():
    start = time.perf_counter()
    parts = []
    ok = True
    for alg in (a_n(1), a_n(2), a_n(3)):
        report = check_ybe(build_r(minimal_rep(alg)), exact=True)
        ok &= report.ok
        parts.append(f"{alg.name} exact {'pass' if report.ok else 'fail'}")
    report = check_ybe(build_r(minimal_rep(g2())), points=POINTS, exact=False)
    ok &= report.ok and len(report.checks) >= 3
    parts.append(f"G2 at v in {{2, 3/2, 5/3}} {'pass' if report.ok else 'fail'}")
    record("AC-5", ok, start, None, "; ".join(parts))


def test_ac6_permutation_sum():
    start = time.perf_counter()
    bad = []
    count = 0
    for N in range(1, 5):
        alg = a_n(N)
        reps = reps_for(alg)
        for a in range(2, N + 2):
            for b in range(max(1, a - 4), a):
                count += 1
                want = e_nonsimple(alg, b, a).scale(alg.omega(1) * (-1) ** (a - b))
                diff = perm_sum_u(alg, a, b) - want
                if not all(r.evaluate(diff).is_zero() for r in reps):
                    bad.append(f"A{N} ({a},{b})")
    record("AC-6", not bad, start, 60, "; ".join(bad) or f"{count} pairs (a,b), N <= 4, minimal and tensor-square")


def test_ac7_antipode_inverse():
    start = time.perf_counter()
    parts = []
    ok = True
    for alg in (a_n(1), a_n(2)):
        report = r_inverse_via_antipode(minimal_rep(alg), exact=True)
        ok &= report.ok
        parts.append(f"{alg.name} exact {'pass' if report.ok else 'fail'}")
    report = r_inverse_via_antipode(minimal_rep(g2()), points=POINTS, exact=False)
    ok &= report.ok and len(report.checks) == 2 * len(POINTS)
    parts.append(f"G2 at 3 points {'pass' if report.ok else 'fail'}")
    record("AC-7", ok, start, None, "; ".join(parts))


def test_ac8_transformation_rule():
    start = time.perf_counter()
    G = g2()
    parts = []
    literal = G2_PLUS_DISPLAYED[(1, 4)].expr(G) == minus_to_plus_transform(catalog_g2("minus", 4, 1))
    parts.append(f"displayed L+(1,4) {'reproduced exactly' if literal else 'differs'}")
    ok = literal
    for alg in (a_n(2), G):
        reps = reps_for(alg)
        n = reps[0].dim
        sources = (
            ("catalog", catalog_lmatrix(alg, "minus"), catalog_lmatrix(alg, "plus")),
            ("slice", lminus_from_r(reps[0]), lplus_from_r(reps[0])),
        )
        for label, lm, lp in sources:
            bad = []
            for a in range(1, n + 1):
                for b in range(1, n + 1):
                    diff = minus_to_plus_transform(lm.get(b, a)) - lp.get(a, b)
                    if not all(r.evaluate(diff).is_zero() for r in reps):
                        bad.append(f"({a},{b})")
            ok &= not bad
            parts.append(f"{alg.name} {label} {'pass' if not bad else 'fail at ' + ' '.join(bad)}")
    record("AC-8", ok, start, None, "; ".join(parts))


def test_ac9_cartan_factor():
    start = time.perf_counter()
    bad = []
    for N in range(1, 5):
        alg = a_n(N)
        rep = minimal_rep(alg)
        for b in range(1, N + 2):
            tau = tuple(Fraction(j, N + 1) - (1 if j >= b else 0) for j in range(1, N + 1))
            if cartan_factor(alg, rep.weights[b - 1]) != tau:
                bad.append(f"A{N} b={b}")
    record("AC-9", not bad, start, None, "; ".join(bad) or "tau_jb for all j, b, N <= 4")


def test_ac10_radical():
    start = time.perf_counter()
    bad = []
    count = 0
    for alg, height in ((a_n(2), 4), (a_n(3), 4), (g2(), 6)):
        for kind in ("e", "f"):
            for label, x in serre_ideal_elements(alg, height, kind):
                count += 1
                if radical_defects(x):
                    bad.append(f"{alg.name} {label}")
    record("AC-10", not bad, start, None, "; ".join(bad[:3]) or f"{count} Serre-ideal elements pair to zero")
