"""Verification suites behind ``holoforms verify``.

Each suite returns a list of :class:`Check` rows in a fixed order, so the
CLI output is deterministic for a given seed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, List, Optional

from . import liealg
from .dense import oracle_report
from .isotropy import analyse, bilinear_space
from .nullcone import globality_report, is_null_along, kappa
from .polyforms import verify_exincom
from .structures import (
    check_structure,
    closure_generators,
    get_catalog,
    resolve,
    spinor_model,
    spinor_representatives,
    structure_algebra,
    su_constants,
    thlms_report,
)


@dataclass(frozen=True)
class Check:
    suite: str
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'}  {self.name}  {self.detail}".rstrip()

    def as_dict(self) -> dict:
        return {"suite": self.suite, "name": self.name, "pass": self.ok, "detail": self.detail}


FAMILIES = [
    ("SO(n)xRn", (2, 3, 4, 5)),
    ("U(n)xR2n", (1, 2, 3, 4)),
    ("SU(n)xR2n", (2, 4, 6, 3, 5)),
    ("Sp(n)xR4n", (1, 2)),
    ("Sp(n).Sp(1)xR4n", (1, 2)),
]

BERGER = [
    ("Spin7xR8", None),
    ("SU(4)xR8", None),
    ("Sp(2)xR8", None),
    ("G2xR7", None),
    ("SO(n)xRn", 3),
    ("SO(n)xRn", 4),
    ("U(n)xR2n", 2),
    ("U(n)xR2n", 3),
    ("SU(n)xR2n", 2),
    ("SU(n)xR2n", 3),
    ("Sp(n)xR4n", 1),
    ("Sp(n)xR4n", 2),
    ("Sp(n).Sp(1)xR4n", 1),
    ("Sp(n).Sp(1)xR4n", 2),
]


def _records(kind: str, model: Optional[str] = None):
    return [s for s in get_catalog() if s.kind == kind and (model is None or s.model == model)]


def isotropy_checks() -> List[Check]:
    out = []
    for kind, model, tag in (("noncompact", "10d", "noncompact"), ("compact", "10d", "compact"), ("noncompact", "8d", "8d"), ("compact-8d", "8d", "8d")):
        for spec in _records(kind, model):
            h = structure_algebra(spec)
            rep = analyse(h, spinor_model(spec))
            exp = spec.expected
            ok = rep.dim == exp["isotropy_dim"] and rep.ideal_dim == exp["ideal_dim"]
            if rep.ideal_dim:
                ok = ok and all(rep.ideal_checks.values())
            detail = f"dim {rep.dim}, ideal {rep.ideal_dim}"
            if kind == "compact":
                ok = ok and rep.killing_signature[0] == 0
                detail += f", killing {tuple(rep.killing_signature)}"
            out.append(Check("tables", f"{tag} {spec.name}", ok, detail))
    return out


def bilinear_checks(max_k: int = 10) -> List[Check]:
    out = []
    for spec in _records("compact", "10d") + _records("compact-8d", "8d"):
        dim1, _ = bilinear_space(spinor_representatives(spec), 1)
        exp = spec.expected["bilinear1_dim"]
        out.append(Check("tables", f"bilinears {spec.name}", dim1 == exp, f"1-forms {dim1} (expected {exp})"))
    for spec in _records("noncompact", "10d"):
        reps = spinor_representatives(spec)
        k0 = kappa(reps[0].model.frame)
        dim1, basis1 = bilinear_space(reps, 1)
        ok = dim1 == 1 and all(set(f.terms) == {(0,)} for f in basis1)
        dims = []
        for k in range(1, max_k + 1):
            d, basis = bilinear_space(reps, k)
            dims.append(d)
            ok = ok and all(is_null_along(k0, f) for f in basis)
        out.append(Check("tables", f"bilinears {spec.name}", ok, f"null; dims k=1..{max_k}: {dims}"))
    return out


def _closure_check(spec, tag: str) -> Check:
    p = liealg.close(closure_generators(spec))
    jac = liealg.jacobi_check(p)
    name = liealg.identify(p) if jac["pass"] else "jacobi failure"
    exp_name, exp_dim = spec.expected_algebra()
    ok = jac["pass"] and name == exp_name and p.dim == exp_dim
    return Check("tables", f"{tag} {spec.label}", ok, f"{name}, dim {p.dim} (expected {exp_name}, dim {exp_dim})")


def closure_checks() -> List[Check]:
    out = [_closure_check(spec, "closure") for spec in _records("noncompact", "10d")]
    for name, ns in FAMILIES:
        for n in ns:
            out.append(_closure_check(resolve(name, n), "family"))
    out.append(_closure_check(resolve("G2xR7"), "g2"))
    for n in (2, 3, 4, 5, 6):
        rows = su_constants(n)
        ok = all(r["match"] for r in rows)
        vals = ", ".join(f"{r['product']} = {r['normalized']}" for r in rows)
        out.append(Check("tables", f"constants SU({n})", ok, vals))
    return out


def consistency_checks() -> List[Check]:
    out = []
    for spec in get_catalog():
        members = [spec.bind(n) for n in range(spec.family["min"], 5)] if spec.is_family else [spec]
        for m in members:
            r = check_structure(m)
            out.append(Check("tables", f"catalog {m.label}", r["pass"], f"algebra dim {r['algebra_dim']}"))
    return out


def suite_tables(seed: int = 0) -> List[Check]:
    return isotropy_checks() + bilinear_checks() + closure_checks() + consistency_checks()


def _report_checks(suite: str, label: str, report: dict) -> List[Check]:
    out = []
    for key, count in report["passed"].items():
        out.append(Check(suite, f"{label} {key}", count == report["trials"], f"{count}/{report['trials']} (seed {report['seed']})"))
    return out


def suite_derivations(seed: int = 0, trials: int = 100) -> List[Check]:
    return _report_checks("derivations", "exincom", verify_exincom(seed=seed, trials=trials))


def suite_patch(seed: int = 0, trials: int = 200) -> List[Check]:
    return _report_checks("patch", "globality", globality_report(seed=seed, trials=trials))


def suite_oracle(seed: int = 0, trials: int = 1000) -> List[Check]:
    return _report_checks("oracle", "dense", oracle_report(seed=seed, trials=trials))


def suite_thlms(seed: int = 0) -> List[Check]:
    out = []
    for name, n in BERGER:
        r = thlms_report(name, n, seed=seed)
        good = sum(1 for p in r["pairs"] if p["decomposable"])
        out.append(Check("thlms", f"thlms {r['name']}", r["pass"], f"{good}/{len(r['pairs'])} pairs decomposable, H {r['H']}"))
    return out


SUITES: Dict[str, Callable[..., List[Check]]] = {
    "tables": suite_tables,
    "derivations": suite_derivations,
    "patch": suite_patch,
    "thlms": suite_thlms,
    "oracle": suite_oracle,
}


def run_suite(name: str, seed: int = 0) -> List[Check]:
    if name == "all":
        out: List[Check] = []
        for key in SUITES:
            out.extend(SUITES[key](seed=seed))
        return out
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(list(SUITES) + ['all'])}")
    return SUITES[name](seed=seed)
