"""Catalog of the structures studied: frames, spinor representatives and
fundamental-form generators.

The data lives in ``data/catalog.json`` (override with the environment
variable ``HOLOFORMS_CATALOG``).  Each record is either a fixed structure
(10d and 8d spinor tables, G2 x| R^7) or a family parametrised by ``n``.
Names are matched after normalisation (case, brackets and spaces are
ignored), and family names also match with a concrete ``n``, e.g.
``SU(3)xR6``.
"""

from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import factorial
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

from . import linalg
from .clifford import Spinor, SpinorModel, imag_part, real_part
from .exterior import FrameContext, Form, permutation_parity, wedge
from .expressions import ParseError, parse_form, parse_spinor_list
from .isotropy import (
    AlgebraElement,
    Subalgebra,
    annihilates,
    bilinear_space,
    form_stabilizer,
    invariant_forms,
    isotropy_algebra,
)
from .nullcone import curly_power, from_transverse, kappa
from .scalar import Scalar

ENV_VAR = "HOLOFORMS_CATALOG"
DEFAULT_PATH = Path(__file__).with_name("data") / "catalog.json"


class StructureError(ValueError):
    pass


@dataclass(frozen=True)
class StructureSpec:
    name: str
    kind: str
    group: str
    model: str
    null: bool
    generators: object
    expected: dict
    aliases: Tuple[str, ...] = ()
    L: Optional[int] = None
    spinors: Optional[str] = None
    family: Optional[dict] = None
    action: Optional[str] = None
    transverse_dim: Optional[int] = None
    n: Optional[int] = None

    @property
    def is_family(self) -> bool:
        return self.family is not None

    @property
    def label(self) -> str:
        return f"{self.name} [n={self.n}]" if self.is_family else self.name

    def bind(self, n: int) -> "StructureSpec":
        """The member of a family with parameter ``n``."""
        if not self.is_family:
            raise StructureError(f"{self.name} takes no parameter")
        lo, hi = self.family["min"], self.family["max"]
        if not isinstance(n, int) or not lo <= n <= hi:
            raise StructureError(f"{self.name}: n must be an integer in [{lo}, {hi}], got {n!r}")
        return replace(self, n=n, transverse_dim=self.family["transverse_per_n"] * n)

    def expected_algebra(self) -> Tuple[Optional[str], Optional[int]]:
        name = self.expected.get("algebra")
        if isinstance(name, dict):
            name = name["even" if self.n % 2 == 0 else "odd"]
        return name, self.expected.get("algebra_dim")

    def as_dict(self) -> dict:
        out = {
            "name": self.name,
            "aliases": list(self.aliases),
            "kind": self.kind,
            "group": self.group,
            "model": self.model,
            "null": self.null,
            "generators": self.generators,
            "expected": self.expected,
        }
        if self.spinors is not None:
            out["spinors"] = self.spinors
            out["L"] = self.L
        if self.family is not None:
            out["family"] = self.family
        if self.action is not None:
            out["action"] = self.action
        if self.n is not None:
            out["n"] = self.n
        return out


def normalize_name(name: str) -> str:
    s = name.strip().lower()
    for a, b in (("×", "x"), ("⋉", "x"), ("·", "."), ("⋅", ".")):
        s = s.replace(a, b)
    return re.sub(r"[\s()_]", "", s)


def _family_pattern(template: str):
    """Regex for a normalised family name; each ``kn`` becomes a number group."""
    parts, mults, pos = [], [], 0
    for m in re.finditer(r"(\d*)n", template):
        parts.append(re.escape(template[pos:m.start()]))
        parts.append(r"(\d+)")
        mults.append(int(m.group(1) or 1))
        pos = m.end()
    parts.append(re.escape(template[pos:]))
    return re.compile("^" + "".join(parts) + "$"), mults


_REQUIRED = ("name", "kind", "group", "generators", "expected")


class Catalog:
    """Immutable collection of structure records with name lookup."""

    def __init__(self, data: dict, source: str = "<memory>"):
        self.source = source
        self.version = data.get("version")
        self.conventions = dict(data.get("conventions", {}))
        self.specs: List[StructureSpec] = []
        self._by_name: Dict[str, StructureSpec] = {}
        self._patterns = []
        for rec in data.get("structures", []):
            spec = self._record(rec)
            self.specs.append(spec)
            for key in (spec.name,) + spec.aliases:
                k = normalize_name(key)
                if self._by_name.get(k, spec) is not spec:
                    raise StructureError(f"{source}: duplicate structure name {key!r}")
                if k in self._by_name:
                    continue
                self._by_name[k] = spec
                if spec.is_family and "n" in k:
                    self._patterns.append((_family_pattern(k), spec))
        for spec in self.specs:
            validate_spec(spec)

    def _record(self, rec: dict) -> StructureSpec:
        missing = [k for k in _REQUIRED if k not in rec]
        if missing:
            raise StructureError(f"{self.source}: record {rec.get('name', '?')!r} lacks {', '.join(missing)}")
        family = rec.get("family")
        model = rec.get("model", "lorentz" if family else None)
        if model not in ("10d", "8d", "lorentz"):
            raise StructureError(f"{self.source}: {rec['name']}: unknown model {model!r}")
        return StructureSpec(
            name=rec["name"],
            kind=str(rec["kind"]),
            group=rec["group"],
            model=model,
            null=bool(rec.get("null", False)),
            generators=rec["generators"],
            expected=dict(rec["expected"]),
            aliases=tuple(rec.get("aliases", ())),
            L=rec.get("L"),
            spinors=rec.get("spinors"),
            family=family,
            action=rec.get("action"),
            transverse_dim=rec.get("transverse_dim"),
        )

    def lookup(self, name: str, n: Optional[int] = None) -> StructureSpec:
        key = normalize_name(name)
        spec = self._by_name.get(key)
        if spec is None:
            for (rx, mults), fam in self._patterns:
                m = rx.match(key)
                if not m:
                    continue
                vals = [int(g) for g in m.groups()]
                if vals[0] % mults[0]:
                    continue
                k = vals[0] // mults[0]
                if all(v == k * c for v, c in zip(vals, mults)):
                    if n is not None and n != k:
                        raise StructureError(f"{name!r} fixes n={k} but n={n} was given")
                    return fam.bind(k)
            raise StructureError(f"unknown structure {name!r}")
        if spec.is_family:
            if n is None:
                raise StructureError(f"{spec.name} is a family; give n")
            return spec.bind(n)
        if n is not None:
            raise StructureError(f"{spec.name} takes no parameter n")
        return spec

    def names(self) -> List[str]:
        return [s.name for s in self.specs]

    def __iter__(self):
        return iter(self.specs)


def load_catalog(path: Union[str, Path, None] = None) -> Catalog:
    path = Path(path) if path else Path(os.environ.get(ENV_VAR) or DEFAULT_PATH)
    try:
        data = json.loads(path.read_text())
    except OSError as exc:
        raise StructureError(f"cannot read catalog {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise StructureError(f"catalog {path} is not valid JSON: {exc}") from None
    return Catalog(data, str(path))


@lru_cache(maxsize=4)
def _cached(path: str) -> Catalog:
    return load_catalog(path)


def get_catalog() -> Catalog:
    return _cached(os.environ.get(ENV_VAR) or str(DEFAULT_PATH))


def resolve(spec: Union[str, StructureSpec], n: Optional[int] = None) -> StructureSpec:
    if isinstance(spec, StructureSpec):
        if spec.is_family and spec.n is None:
            if n is None:
                raise StructureError(f"{spec.name} is a family; give n")
            return spec.bind(n)
        return spec
    return get_catalog().lookup(spec, n)


# ---------------------------------------------------------------------------
# frames and spinors


def spinor_model(spec: StructureSpec) -> Optional[SpinorModel]:
    if spec.model == "10d":
        return SpinorModel.ten_d()
    if spec.model == "8d":
        return SpinorModel.eight_d()
    return None


def catalog_frame(spec, n: Optional[int] = None) -> FrameContext:
    spec = resolve(spec, n)
    model = spinor_model(spec)
    if model is not None:
        return model.frame
    return FrameContext.lightcone(spec.transverse_dim + 2)


def majorana_projection(spinors: Sequence[Spinor]) -> List[Spinor]:
    """Real and imaginary parts of each spinor, keeping the independent ones in order."""
    ech = linalg.IntegerEchelon()
    out = []
    for eps in spinors:
        for part in (real_part(eps), imag_part(eps)):
            if part and ech.add(part.real_vector()):
                out.append(part)
    return out


def spinor_representatives(spec, n: Optional[int] = None) -> List[Spinor]:
    spec = resolve(spec, n)
    model = spinor_model(spec)
    if model is None or spec.spinors is None:
        raise StructureError(f"{spec.name} has no spinor representatives")
    return majorana_projection(parse_spinor_list(spec.spinors, model))


# ---------------------------------------------------------------------------
# named constructions on the transverse directions


def _t(frame: FrameContext, labels) -> Tuple[int, ...]:
    return tuple(frame.transverse_index(x) for x in labels)


def volume_form(frame: FrameContext, m: int) -> Form:
    return Form(frame, m, {_t(frame, range(1, m + 1)): 1})


def kahler_form(frame: FrameContext, n: int) -> Form:
    return Form(frame, 2, {_t(frame, (2 * a - 1, 2 * a)): 1 for a in range(1, n + 1)})


def holomorphic_volume(frame: FrameContext, n: int) -> Form:
    """``(e1 + i e2) ^ (e3 + i e4) ^ ... ^ (e(2n-1) + i e(2n))`` (complex)."""
    out = Form.scalar(frame)
    for a in range(1, n + 1):
        out = wedge(out, Form(frame, 1, {_t(frame, (2 * a - 1,)): 1, _t(frame, (2 * a,)): Scalar(0, 1)}))
    return out


_QUAT = {
    1: (((1, 2), 1), ((3, 4), 1)),
    2: (((1, 3), 1), ((2, 4), -1)),
    3: (((1, 4), 1), ((2, 3), 1)),
}


def quaternionic_form(frame: FrameContext, n: int, r: int) -> Form:
    """The r-th Kähler form of the standard hyperkähler triple on R^{4n}."""
    terms = {}
    for b in range(n):
        for (i, j), s in _QUAT[r]:
            terms[_t(frame, (4 * b + i, 4 * b + j))] = s
    return Form(frame, 2, terms)


def quaternionic_four_form(frame: FrameContext, n: int) -> Form:
    out = Form.zero(frame, 4)
    for r in (1, 2, 3):
        w = quaternionic_form(frame, n, r)
        out = out + wedge(w, w)
    return out


G2_THREE_FORM = "e123+e145+e167+e246-e257-e347-e356"


def hodge_star(phi: Form, labels: Sequence[int]) -> Form:
    """Euclidean Hodge dual on the transverse directions ``labels`` (oriented in order)."""
    frame = phi.frame
    idx = _t(frame, labels)
    terms = {}
    for I, c in phi.terms.items():
        rest = tuple(a for a in idx if a not in I)
        perm = [idx.index(a) for a in I + rest]
        terms[rest] = -c if permutation_parity(perm) else c
    return Form(frame, len(idx) - phi.degree, terms)


def construct(frame: FrameContext, entry: dict, spec: StructureSpec) -> Form:
    kind = entry["construct"]
    n = spec.n
    m = spec.transverse_dim
    if kind == "volume":
        return volume_form(frame, m)
    if kind == "kahler":
        return kahler_form(frame, n)
    if kind == "holomorphic":
        chi = holomorphic_volume(frame, n)
        part = chi.real_part() if entry.get("part", "re") == "re" else chi.imag_part()
        return part * entry.get("sign", 1)
    if kind == "quaternionic":
        return quaternionic_form(frame, n, entry["r"])
    if kind == "quaternionic-4form":
        return quaternionic_four_form(frame, n)
    if kind == "g2-3form":
        return parse_form(G2_THREE_FORM, frame, 3)
    if kind == "g2-4form":
        return hodge_star(parse_form(G2_THREE_FORM, frame, 3), range(1, 8))
    raise StructureError(f"{spec.name}: unknown construction {kind!r}")


# ---------------------------------------------------------------------------
# generators and fundamental forms


def structure_algebra(spec, n: Optional[int] = None) -> Subalgebra:
    """The algebra the generators must be invariant under.

    Spinor records use the isotropy algebra of their representatives;
    families use matrix realisations of the defining K-action on the
    transverse block, built from commutants rather than from the forms.
    """
    spec = resolve(spec, n)
    if spec.spinors is not None:
        return isotropy_algebra(spinor_representatives(spec))
    frame = catalog_frame(spec)
    act = spec.action
    if act == "stabilizer":
        return form_stabilizer(frame, [g for _, g in transverse_generators(spec)], transverse=True)
    n, m = spec.n, spec.transverse_dim
    if act == "so":
        mats = _antisymmetric_basis(m)
    elif act in ("u", "su"):
        J = _matrix_of(kahler_form(FrameContext.euclidean(m), n))
        mats = _commutant([J], m, traceless=J if act == "su" else None)
    elif act in ("sp", "sp.sp1"):
        e = FrameContext.euclidean(m)
        Js = [_matrix_of(quaternionic_form(e, n, r)) for r in (1, 2, 3)]
        mats = _commutant(Js, m)
        if act == "sp.sp1":
            mats = mats + Js
    else:
        raise StructureError(f"{spec.name}: unknown action {act!r}")
    return Subalgebra.from_basis(frame, [_block_element(frame, A) for A in mats])


def _matrix_of(omega: Form):
    m = omega.frame.dim
    J = [[Fraction(0)] * m for _ in range(m)]
    for (a, b), c in omega.terms.items():
        J[a][b] = c.re
        J[b][a] = -c.re
    return J


def _antisymmetric_basis(m: int):
    out = []
    for a, b in combinations(range(m), 2):
        A = [[Fraction(0)] * m for _ in range(m)]
        A[a][b], A[b][a] = Fraction(1), Fraction(-1)
        out.append(A)
    return out


def _commutant(Js, m: int, traceless=None):
    """Antisymmetric m x m matrices commuting with every J (and with tr(T A) = 0)."""
    basis = _antisymmetric_basis(m)
    rows: Dict[tuple, Dict[int, Fraction]] = {}
    for u, A in enumerate(basis):
        for r, J in enumerate(Js):
            AJ, JA = linalg.mat_mul(A, J), linalg.mat_mul(J, A)
            for i in range(m):
                for j in range(m):
                    v = AJ[i][j] - JA[i][j]
                    if v:
                        rows.setdefault((r, i, j), {})[u] = v
        if traceless is not None:
            t = sum(linalg.mat_mul(traceless, A)[i][i] for i in range(m))
            if t:
                rows.setdefault(("tr",), {})[u] = t
    kernel = linalg.nullspace(list(rows.values()), len(basis))
    out = []
    for vec in kernel:
        A = [[Fraction(0)] * m for _ in range(m)]
        for u, c in vec.items():
            B = basis[u]
            for i in range(m):
                for j in range(m):
                    A[i][j] += Fraction(c) * B[i][j]
        out.append(A)
    return out


def _block_element(frame: FrameContext, A) -> AlgebraElement:
    off = frame.transverse[0]
    n = frame.dim
    X = [[Fraction(0)] * n for _ in range(n)]
    for i, row in enumerate(A):
        for j, v in enumerate(row):
            X[off + i][off + j] = v
    return AlgebraElement(X, frame)


def transverse_generators(spec, n: Optional[int] = None) -> List[Tuple[str, Form]]:
    """Generators before the e^- lift (for non-null records: the generators themselves)."""
    spec = resolve(spec, n)
    frame = catalog_frame(spec)
    gens = spec.generators
    if isinstance(gens, str):
        kind, _, arg = gens.partition(":")
        k = int(arg)
        if kind == "invariant":
            forms = invariant_forms(structure_algebra(spec), k, transverse=True)
            return [(f"w{i + 1}", f) for i, f in enumerate(forms)]
        if kind == "bilinear":
            _, basis = bilinear_space(spinor_representatives(spec), k)
            return [(f"b{i + 1}", f) for i, f in enumerate(basis)]
        raise StructureError(f"{spec.name}: unknown generator directive {gens!r}")
    out = []
    for entry in gens:
        if "form" in entry:
            out.append((entry["name"], parse_form(entry["form"], frame)))
        else:
            out.append((entry["name"], construct(frame, entry, spec)))
    return out


def closure_generators(spec, n: Optional[int] = None) -> List[Tuple[str, Form]]:
    """The fundamental forms without kappa (the input of the bracket closure)."""
    spec = resolve(spec, n)
    gens = transverse_generators(spec)
    if spec.null:
        return [(name, from_transverse(psi)) for name, psi in gens]
    return gens


def fundamental_forms(spec, n: Optional[int] = None) -> List[Tuple[str, Form]]:
    """kappa followed by e^- ^ (transverse generators) for null structures."""
    spec = resolve(spec, n)
    gens = closure_generators(spec)
    if spec.null:
        return [("kappa", kappa(catalog_frame(spec)))] + gens
    return gens


# ---------------------------------------------------------------------------
# validation


def validate_spec(spec: StructureSpec) -> None:
    """Cheap load-time checks: expressions parse, counts and null shapes match."""
    if spec.is_family:
        fam = spec.family
        if not {"min", "max", "transverse_per_n"} <= set(fam) or fam["min"] > fam["max"]:
            raise StructureError(f"{spec.name}: malformed family parameters")
        if spec.action is None:
            raise StructureError(f"{spec.name}: family without a defining action")
        members = [spec.bind(fam["min"])]
    else:
        if spec.model == "lorentz" and not spec.transverse_dim:
            raise StructureError(f"{spec.name}: lorentz model needs transverse_dim")
        members = [spec]
    try:
        for member in members:
            if member.spinors is not None:
                reps = spinor_representatives(member)
                if len(reps) != member.L:
                    raise StructureError(
                        f"{member.name}: {len(reps)} Majorana representatives, record says L={member.L}"
                    )
            if isinstance(member.generators, str):
                if member.spinors is None:
                    raise StructureError(f"{member.name}: directive {member.generators!r} needs spinors")
                continue
            frame = catalog_frame(member)
            for name, psi in transverse_generators(member):
                if not psi:
                    raise StructureError(f"{member.name}: generator {name} is zero")
                if frame.is_lightcone and any(a < 2 for I in psi.terms for a in I):
                    raise StructureError(f"{member.name}: generator {name} is not transverse")
    except ParseError as exc:
        raise StructureError(f"{spec.name}: {exc}") from None


def check_structure(spec, n: Optional[int] = None) -> dict:
    """Consistency triangle: algebra dimension, invariance and 1-form bilinears."""
    spec = resolve(spec, n)
    h = structure_algebra(spec)
    forms = fundamental_forms(spec)
    out = {
        "name": spec.label,
        "algebra_dim": h.dim,
        "invariant": all(annihilates(h, f) for _, f in forms),
        "generators": len(forms),
    }
    exp = spec.expected
    if "isotropy_dim" in exp:
        ideal = h.null_ideal().dim if h.frame.is_lightcone else 0
        out["ideal_dim"] = ideal
        out["dims_ok"] = h.dim == exp["isotropy_dim"] and ideal == exp["ideal_dim"]
    if spec.null:
        from .nullcone import is_null_along

        k = kappa(catalog_frame(spec))
        out["null"] = all(is_null_along(k, f) for _, f in forms)
    if spec.spinors is not None:
        dim1, basis = bilinear_space(spinor_representatives(spec), 1)
        out["bilinear1_dim"] = dim1
        if spec.null:
            out["bilinear1_ok"] = dim1 == 1 and all(set(f.terms) == {(0,)} for f in basis)
        elif "bilinear1_dim" in exp:
            out["bilinear1_ok"] = dim1 == exp["bilinear1_dim"]
    out["pass"] = all(v for k, v in out.items() if k in ("invariant", "dims_ok", "null", "bilinear1_ok"))
    return out


# ---------------------------------------------------------------------------
# SU(n) structure constants


def chi_norm_squared(chi: Form) -> Fraction:
    """Sum of squares of the strict components."""
    return sum((c.re * c.re for c in chi.terms.values()), Fraction(0))


def su_constants(n: int) -> List[dict]:
    """Raw and normalised products of the SU(n) null forms.

    The chi products are rescaled by ``2 / |breve chi|^2`` so that they refer
    to forms normalised to ``|breve chi|^2 = 2``; the expected values are
    ``omega bcw chi1 = -n chi2``, ``omega bcw chi2 = n chi1`` and
    ``chi1 bcw chi2 = -(2/(n-1)!) curly^{n-1} omega`` (n even) or
    ``chi_a bcw chi_a = (2/(n-1)!) curly^{n-1} omega`` (n odd).
    """
    from .liealg import proportional, BARCURLYWEDGE, raw_product

    gens = dict(closure_generators("SU(n)xR2n", n))
    omega, chi1, chi2 = gens["omega"], gens["chi1"], gens["chi2"]
    scale = Fraction(2) / chi_norm_squared(transverse_generators("SU(n)xR2n", n)[1][1])
    top = curly_power(omega, n - 1)
    c = Fraction(2, factorial(n - 1))
    rows = []

    def row(label, product, target, expected, norm):
        ratio = proportional(product, target)
        raw = None if ratio is None else ratio.re
        value = None if raw is None else raw * norm
        rows.append({"product": label, "raw": raw, "normalized": value, "expected": expected,
                     "match": value == expected})

    row("omega.chi1 / chi2", raw_product(omega, chi1, BARCURLYWEDGE), chi2, Fraction(-n), 1)
    row("omega.chi2 / chi1", raw_product(omega, chi2, BARCURLYWEDGE), chi1, Fraction(n), 1)
    if n % 2 == 0:
        row("chi1.chi2 / curly^(n-1) omega", raw_product(chi1, chi2, BARCURLYWEDGE), top, -c, scale)
    else:
        row("chi1.chi1 / curly^(n-1) omega", raw_product(chi1, chi1, BARCURLYWEDGE), top, c, scale)
        row("chi2.chi2 / curly^(n-1) omega", raw_product(chi2, chi2, BARCURLYWEDGE), top, c, scale)
    return rows


# ---------------------------------------------------------------------------
# sigma-model decomposition on the transverse generators


def euclidean_generators(spec, n: Optional[int] = None) -> List[Tuple[str, Form]]:
    """Transverse generators re-based to the euclidean frame of the transverse space."""
    spec = resolve(spec, n)
    frame = catalog_frame(spec)
    gens = transverse_generators(spec)
    if not frame.is_lightcone:
        return gens
    if any(a < 2 for _, g in gens for I in g.terms for a in I):
        raise StructureError(f"{spec.name}: generators are not transverse")
    e = FrameContext.euclidean(frame.dim - 2)
    return [(name, Form(e, g.degree, {tuple(a - 2 for a in I): c for I, c in g.terms.items()})) for name, g in gens]


def thlms_report(spec, n: Optional[int] = None, seed: int = 0) -> dict:
    """Decomposability of every ordered generator pair and checks on nu.

    ``H`` is a random combination of the invariant 3-forms of the structure
    when there are any (then nu must be invariant too), otherwise a random
    rational 3-form.
    """
    import random

    from .exterior import raise_index
    from .sigmalg import conconx_decompose, nijenhuis_torsion, nu_tensor_oracle

    spec = resolve(spec, n)
    gens = euclidean_generators(spec)
    frame = gens[0][1].frame
    h = form_stabilizer(frame, [g for _, g in gens])
    rng = random.Random(seed)
    inv3 = invariant_forms(h, 3) if frame.dim >= 3 else []
    if inv3:
        H = Form.zero(frame, 3)
        for f in inv3:
            H = H + f * rng.randint(1, 3)
    else:
        H = Form(frame, 3, {I: rng.randint(-2, 2) for I in combinations(range(frame.dim), 3)})
    zero_H = Form.zero(frame, 3)
    pairs = []
    for (a, phi), (b, psi) in ((x, y) for x in gens for y in gens):
        L, M = raise_index(phi), raise_index(psi)
        dec = conconx_decompose(L, M)
        row = {"left": a, "right": b, "decomposable": dec is not None}
        if dec is not None:
            tn = nijenhuis_torsion(L, M, H, dec.xi)
            row["nu_matches_oracle"] = tn.nu == nu_tensor_oracle(L, M, H, dec.xi)
            if inv3:
                row["nu_invariant"] = annihilates(h, tn.nu)
            t0 = nijenhuis_torsion(L, M, zero_H, dec.xi)
            row["zero_H"] = not t0.nu and not t0.N
        pairs.append(row)
    ok = all(all(v for k, v in r.items() if k not in ("left", "right")) for r in pairs)
    return {"name": spec.label, "H": "invariant" if inv3 else "random", "pairs": pairs, "pass": ok}
