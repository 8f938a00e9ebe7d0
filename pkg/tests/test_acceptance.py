"""Acceptance criteria, one test per criterion, all comparisons exact.

Each test records a ``PASS criterion N`` / ``FAIL criterion N`` line; the
lines are printed together at the end of the pytest run (see conftest).
"""

import pytest

from holoforms import liealg
from holoforms.clifford import SpinorModel
from holoforms.dense import oracle_report
from holoforms.expressions import parse_spinor_list
from holoforms.isotropy import analyse, bilinear_space, isotropy_algebra
from holoforms.nullcone import globality_report, is_null_along, kappa
from holoforms.polyforms import verify_exincom
from holoforms.structures import closure_generators, majorana_projection, su_constants, thlms_report

TEN = SpinorModel.ten_d()
EIGHT = SpinorModel.eight_d()

RESULTS = {}

NONCOMPACT = [
    ("Spin(7)", "1+e1234", 1, 29),
    ("SU(4)", "1", 2, 23),
    ("Sp(2)", "1, i(e12+e34)", 3, 18),
    ("Sp(1)xSp(1)", "1, e12", 4, 14),
    ("Sp(1)", "1, e12, e13+e24", 5, 11),
    ("U(1)", "1, e12, e13", 6, 9),
    ("{1}", "1, e12, e13, e14", 8, 8),
]
DELTA16 = "1, e12, e13, e14, e15, e23, e24, e25, e34, e35, e45, e1234, e1235, e1245, e1345, e2345"
COMPACT = [
    ("G2", "1+e1234, e15+e2345", 2, 14, 3),
    ("SU(3)", "1, e15", 4, 8, 4),
    ("SU(2)", "1, e12, e15, e25", 8, 3, 6),
    ("{1}", DELTA16, 16, 0, None),
]
COMPACT_8D = [
    ("G2", "1+e1234, e1+e234", 2, 14, 1),
    ("SU(3)", "1, e1", 4, 8, 2),
    ("SU(2)", "1, e12, e1, e2", 8, 3, 4),
]
NONCOMPACT_8D_DIMS = [21, 15, 10, 6, 3, 1, 0]

NONCOMPACT_CLOSURES = [
    ("Spin7xR8", "R", 1),
    ("SU(4)xR8", "e_hat(2)", 4),
    ("Sp(2)xR8", "sp(1)", 3),
    ("Sp(1)xSp(1)xR8", "+^2sp(1)", 6),
    ("Sp(1)xR8", "so(5)", 10),
    ("U(1)xR8", "u(4)", 16),
    ("{1}xR8", "so(8)", 28),
]
FAMILY_CLOSURES = (
    [("SO(n)xRn", n, "R", 1) for n in (2, 3, 4, 5)]
    + [("U(n)xR2n", n, "R", 1) for n in (1, 2, 3, 4)]
    + [("SU(n)xR2n", 2 * k, "e_hat(2)", 4) for k in (1, 2, 3)]
    + [("SU(n)xR2n", 2 * k + 1, "s(2)", 4) for k in (1, 2)]
    + [("Sp(n)xR4n", n, "sp(1)", 3) for n in (1, 2)]
    + [("Sp(n).Sp(1)xR4n", n, "R", 1) for n in (1, 2)]
    + [("G2xR7", None, "s(1)", 2)]
)
# SU(2): chi1, chi2 are 3-forms like omega and curly^1 omega = omega, so the
# closure is sp(1) rather than the centrally extended e_hat(2)
UNATTAINABLE = {("SU(n)xR2n", 2)}

BERGER = [
    ("Spin7xR8", None), ("SU(4)xR8", None), ("Sp(2)xR8", None), ("G2xR7", None),
    ("SO(n)xRn", 3), ("SO(n)xRn", 4), ("U(n)xR2n", 2), ("U(n)xR2n", 3),
    ("SU(n)xR2n", 2), ("SU(n)xR2n", 3), ("Sp(n)xR4n", 1), ("Sp(n)xR4n", 2),
    ("Sp(n).Sp(1)xR4n", 1), ("Sp(n).Sp(1)xR4n", 2),
]


def reps(text, model=TEN):
    return majorana_projection(parse_spinor_list(text, model))


def record(n, failures, summary):
    ok = not failures
    detail = summary if ok else "; ".join(failures)
    RESULTS[n] = f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}"
    print(RESULTS[n])
    return ok


def closure_row(name, n):
    p = liealg.close(closure_generators(name, n))
    jac = liealg.jacobi_check(p)
    ident = liealg.identify(p) if jac["pass"] else "jacobi failure"
    return p, jac, ident


def test_criterion_1_isotropy_noncompact():
    failures = []
    for group, text, L, dim in NONCOMPACT:
        spinors = reps(text)
        rep = analyse(isotropy_algebra(spinors), TEN)
        got = (len(spinors), rep.dim, rep.ideal_dim, rep.name)
        if got != (L, dim, 8, f"{group}xR8") or not all(rep.ideal_checks.values()):
            failures.append(f"{group}: {got}")
    assert record(1, failures, "dims 29, 23, 18, 14, 11, 9, 8 with abelian R8 ideal")


def test_criterion_2_isotropy_compact():
    failures = []
    for group, text, L, dim, _ in COMPACT:
        spinors = reps(text)
        rep = analyse(isotropy_algebra(spinors), TEN)
        got = (len(spinors), rep.dim, rep.killing_signature[0])
        if got != (L, dim, 0) or rep.name != group:
            failures.append(f"{group}: {got} {rep.name}")
    assert record(2, failures, "dims 14, 8, 3, 0, Killing forms negative semidefinite")


def test_criterion_3_isotropy_eight_d():
    failures = []
    for (group, text, _, _), dim in zip(NONCOMPACT, NONCOMPACT_8D_DIMS):
        got = isotropy_algebra(reps(text, EIGHT)).dim
        if got != dim:
            failures.append(f"{group} 8d: {got} != {dim}")
    for group, text, L, dim, _ in COMPACT_8D:
        spinors = reps(text, EIGHT)
        got = (len(spinors), isotropy_algebra(spinors).dim)
        if got != (L, dim):
            failures.append(f"{group} holc: {got}")
    assert record(3, failures, "so(8) dims 21, 15, 10, 6, 3, 1, 0 and 14, 8, 3")


def test_criterion_4_bilinears():
    failures = []
    for group, text, _, _, count in COMPACT[:3]:
        d, _ = bilinear_space(reps(text), 1)
        if d != count:
            failures.append(f"{group} 10d: {d} != {count}")
    for group, text, _, _, count in COMPACT_8D:
        d, _ = bilinear_space(reps(text, EIGHT), 1)
        if d != count:
            failures.append(f"{group} 8d: {d} != {count}")
    k0 = kappa(TEN.frame)
    for group, text, _, _ in NONCOMPACT:
        spinors = reps(text)
        d, basis = bilinear_space(spinors, 1)
        if d != 1 or set(basis[0].terms) != {(0,)}:
            failures.append(f"{group}: 1-form bilinears not spanned by e-")
        for k in range(1, 11):
            _, basis = bilinear_space(spinors, k)
            if not all(is_null_along(k0, f) for f in basis):
                failures.append(f"{group}: a {k}-form bilinear is not null")
    assert record(4, failures, "3/4/6 and 1/2/4 one-forms; non-compact bilinears null, k=1..10")


def test_criterion_5_closure_noncompact():
    failures = []
    for name, algebra, dim in NONCOMPACT_CLOSURES:
        p, jac, ident = closure_row(name, None)
        if not jac["pass"] or (ident, p.dim) != (algebra, dim):
            failures.append(f"{name}: {ident} dim {p.dim}")
    assert record(5, failures, "R, e_hat(2), sp(1), +^2sp(1), so(5), u(4), so(8); Jacobi exact")


def _family_failures():
    failures, attainable_failures = [], []
    for name, n, algebra, dim in FAMILY_CLOSURES:
        p, jac, ident = closure_row(name, n)
        if not jac["pass"] or (ident, p.dim) != (algebra, dim):
            msg = f"{name} n={n}: {ident} dim {p.dim}, expected {algebra} dim {dim}"
            failures.append(msg)
            if (name, n) not in UNATTAINABLE:
                attainable_failures.append(msg)
    for n in (2, 3, 4, 5, 6):
        for row in su_constants(n):
            if not row["match"]:
                msg = f"SU({n}) {row['product']} = {row['normalized']}, expected {row['expected']}"
                failures.append(msg)
                attainable_failures.append(msg)
    return failures, attainable_failures


def test_criterion_6_closure_families():
    failures, attainable = _family_failures()
    record(6, failures, "all families identified; -n, n, -+2/(n-1)! constants match")
    # the rows other than the recorded SU(2) case must hold; SU(2) is pinned below
    assert not attainable, attainable


@pytest.mark.xfail(strict=True, reason="SU(2) fundamental forms close to sp(1); recorded in the decisions ledger")
def test_criterion_6_su2_row():
    p, jac, ident = closure_row("SU(n)xR2n", 2)
    assert jac["pass"]
    assert (ident, p.dim) == ("e_hat(2)", 4)


def test_criterion_7_derivation_identities():
    rep = verify_exincom(seed=0, trials=100)
    failures = [f"{k}: {v}/100" for k, v in rep["passed"].items() if v != 100]
    assert record(7, failures, "dd, id, ii identities 100/100 each")


def test_criterion_8_globality():
    rep = globality_report(seed=0, trials=200)
    failures = [f"{k}: {v}/200" for k, v in rep["passed"].items() if v != 200]
    if set(rep["passed"]) != {"curlywedge", "barcurlywedge", "kappa", "metric"}:
        failures.append(f"unexpected checks {sorted(rep['passed'])}")
    assert record(8, failures, "curlywedge, barcurlywedge, e- and g 200/200 each")


def test_criterion_9_thlms():
    failures = []
    for name, n in BERGER:
        r = thlms_report(name, n, seed=0)
        for pair in r["pairs"]:
            bad = [k for k, v in pair.items() if k not in ("left", "right") and not v]
            if bad:
                failures.append(f"{r['name']} ({pair['left']}, {pair['right']}): {', '.join(bad)}")
    assert record(9, failures, f"{len(BERGER)} Berger structures, every pair decomposes; nu exact, H=0 gives 0")


def test_criterion_10_dense_oracle():
    rep = oracle_report(seed=0, trials=1000, max_dim=6)
    failures = [f"{k}: {v}/1000" for k, v in rep["passed"].items() if v != 1000]
    assert record(10, failures, "wedge, inner, barwedge 1000/1000 each in dims <= 6")
