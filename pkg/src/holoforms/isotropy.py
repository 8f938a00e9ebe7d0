"""Exact linear algebra over so(p,q): isotropy algebras, invariant forms,
bilinear spaces and invariant-based structure identification."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .clifford import (
    Spinor,
    SpinorError,
    SpinorModel,
    bilinear,
    model_coframe,
    spin_act,
)
from .exterior import FrameContext, Form, MINUS, accumulate, merge_sign

Matrix = Tuple[Tuple[Fraction, ...], ...]


def _freeze(m) -> Matrix:
    return tuple(tuple(Fraction(x) for x in row) for row in m)


class AlgebraElement:
    """A matrix ``X^a_b`` acting on vectors of ``frame`` with ``X^T g + g X = 0``."""

    __slots__ = ("matrix", "frame", "__dict__")

    def __init__(self, matrix, frame: FrameContext, check: bool = True):
        self.matrix = _freeze(matrix)
        self.frame = frame
        n = frame.dim
        if len(self.matrix) != n or any(len(r) != n for r in self.matrix):
            raise ValueError(f"expected a {n}x{n} matrix")
        if check and not self.is_antisymmetric():
            raise ValueError("matrix is not in so(g): X^T g + g X != 0")

    def is_antisymmetric(self) -> bool:
        X, f = self.matrix, self.frame
        n = f.dim
        for a in range(n):
            for b in range(n):
                # (g X)_{ab} + (g X)_{ba}
                s = sum(f.g(a, c) * X[c][b] for c, _ in f.metric_partners(a))
                s += sum(f.g(b, c) * X[c][a] for c, _ in f.metric_partners(b))
                if s:
                    return False
        return True

    @classmethod
    def basis_element(cls, frame: FrameContext, a: int, b: int) -> "AlgebraElement":
        """``g^{-1}(E_ab - E_ba)``: lowered components +1 at (a,b), -1 at (b,a)."""
        n = frame.dim
        m = [[Fraction(0)] * n for _ in range(n)]
        for c, gv in frame.metric_partners(a):
            m[c][b] += gv
        for c, gv in frame.metric_partners(b):
            m[c][a] -= gv
        return cls(m, frame, check=False)

    def __add__(self, other):
        return AlgebraElement(
            [[x + y for x, y in zip(r, s)] for r, s in zip(self.matrix, other.matrix)],
            self.frame,
            check=False,
        )

    def __mul__(self, c):
        c = Fraction(c)
        return AlgebraElement([[x * c for x in r] for r in self.matrix], self.frame, check=False)

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        return isinstance(other, AlgebraElement) and self.frame == other.frame and self.matrix == other.matrix

    def __hash__(self):
        return hash((self.matrix, self.frame))

    def bracket(self, other: "AlgebraElement") -> "AlgebraElement":
        a = linalg.mat_mul(self.matrix, other.matrix)
        b = linalg.mat_mul(other.matrix, self.matrix)
        return AlgebraElement([[x - y for x, y in zip(r, s)] for r, s in zip(a, b)], self.frame, check=False)

    def vector(self) -> Dict[int, Fraction]:
        n = self.frame.dim
        return {a * n + b: v for a, r in enumerate(self.matrix) for b, v in enumerate(r) if v}

    def orthonormal_matrix(self, model: SpinorModel):
        """The same endomorphism in the orthonormal gamma basis of ``model``."""
        cache = self.__dict__.setdefault("_orth", {})
        if model.kind in cache:
            return cache[model.kind]
        if self.frame != model.frame:
            raise SpinorError(f"algebra element lives on {self.frame.describe()}, not the {model} model frame")
        C = _coframe_matrix(model)
        Cinv = linalg.mat_inverse(C)
        out = linalg.mat_mul(linalg.mat_mul(C, [list(r) for r in self.matrix]), Cinv)
        cache[model.kind] = out
        return out

    def act_on_form(self, phi: Form) -> Form:
        """Derivation action on forms: ``X . e^a = -X^a_b e^b``."""
        if phi.frame != self.frame:
            raise ValueError("frame mismatch")
        return Form._make(phi.frame, phi.degree, act_terms(self.matrix, phi.terms))

    def __repr__(self):
        return f"AlgebraElement({[list(map(str, r)) for r in self.matrix]})"


def _coframe_matrix(model: SpinorModel):
    rows = model_coframe(model.kind)
    n = model.dim
    C = [[Fraction(0)] * n for _ in range(n)]
    for A, row in enumerate(rows):
        for a, c in row:
            C[A][a] = c
    return C


def act_terms(X, terms) -> dict:
    out: dict = {}
    n = len(X)
    cols = [[(b, X[a][b]) for b in range(n) if X[a][b]] for a in range(n)]
    for I, c in terms.items():
        for j, a in enumerate(I):
            rest = I[:j] + I[j + 1:]
            for b, x in cols[a]:
                if b in rest:
                    continue
                # e^{I} with slot j replaced by e^b: move e^b to the front
                # (sign (-1)^j), then merge into the sorted remainder.
                s, K = merge_sign((b,), rest)
                sign = s * (-1 if j & 1 else 1)
                accumulate(out, K, -(c * x) if sign > 0 else c * x)
    return out


@dataclass
class Subalgebra:
    """A matrix Lie subalgebra with a structure-constant closure certificate."""

    frame: FrameContext
    basis: List[AlgebraElement]
    structure_constants: Dict[Tuple[int, int], Dict[int, Fraction]] = field(default_factory=dict)

    @classmethod
    def from_basis(cls, frame: FrameContext, basis: Sequence[AlgebraElement]) -> "Subalgebra":
        sub = cls(frame, list(basis))
        sub.structure_constants = sub._compute_constants()
        return sub

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coordinates(self, x: AlgebraElement) -> Optional[List[Fraction]]:
        return linalg.express([b.vector() for b in self.basis], x.vector())

    def _compute_constants(self):
        consts = {}
        vecs = [b.vector() for b in self.basis]
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                br = self.basis[i].bracket(self.basis[j])
                coords = linalg.express(vecs, br.vector())
                if coords is None:
                    raise ValueError(f"basis is not closed: [{i},{j}] leaves the span")
                consts[(i, j)] = {k: Fraction(c) for k, c in enumerate(coords) if c}
        return consts

    def verify_certificate(self) -> bool:
        for (i, j), coeffs in self.structure_constants.items():
            br = self.basis[i].bracket(self.basis[j])
            acc = {}
            for k, c in coeffs.items():
                for key, v in self.basis[k].vector().items():
                    accumulate(acc, key, c * v)
            if acc != br.vector():
                return False
        return True

    def bracket_coords(self, i: int, j: int) -> Dict[int, Fraction]:
        if i == j:
            return {}
        if i < j:
            return self.structure_constants.get((i, j), {})
        return {k: -v for k, v in self.structure_constants.get((j, i), {}).items()}

    # -- invariants -------------------------------------------------------
    def ad_matrix(self, i: int):
        n = self.dim
        m = [[Fraction(0)] * n for _ in range(n)]
        for j in range(n):
            for k, c in self.bracket_coords(i, j).items():
                m[k][j] = c
        return m

    @cached_property
    def killing_form(self):
        n = self.dim
        ads = [self.ad_matrix(i) for i in range(n)]
        K = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                v = sum(
                    (ads[i][a][b] * ads[j][b][a] for a in range(n) for b in range(n) if ads[i][a][b] and ads[j][b][a]),
                    Fraction(0),
                )
                K[i][j] = K[j][i] = v
        return K

    @cached_property
    def trace_form(self):
        n = self.dim
        mats = [b.matrix for b in self.basis]
        T = [[Fraction(0)] * n for _ in range(n)]
        d = self.frame.dim
        for i in range(n):
            for j in range(i, n):
                v = sum(
                    (mats[i][a][b] * mats[j][b][a] for a in range(d) for b in range(d) if mats[i][a][b] and mats[j][b][a]),
                    Fraction(0),
                )
                T[i][j] = T[j][i] = v
        return T

    def killing_signature(self) -> Tuple[int, int, int]:
        return linalg.symmetric_signature(self.killing_form)

    def derived_dimension(self) -> int:
        rows = []
        for (i, j), coeffs in self.structure_constants.items():
            if coeffs:
                rows.append(coeffs)
        return linalg.rank(rows)

    def radical_dimension(self) -> int:
        """dim of [g,g]^perp under the Killing form (the solvable radical)."""
        derived = linalg.rref([c for c in self.structure_constants.values() if c])
        K = self.killing_form
        # x in rad  <=>  K(x, y) = 0 for all y in [g,g]
        rows = []
        for _, y in derived:
            rows.append({i: sum((K[i][k] * v for k, v in y.items()), Fraction(0)) for i in range(self.dim)})
        rows = [{k: v for k, v in r.items() if v} for r in rows]
        return self.dim - linalg.rank(rows)

    def null_ideal(self) -> "NullIdeal":
        """Kernel of the vector-representation trace form, with its checks."""
        kernel = linalg.nullspace([{j: v for j, v in enumerate(r) if v} for r in self.trace_form], self.dim)
        elems = []
        for vec in kernel:
            acc = None
            for k, c in vec.items():
                term = self.basis[k] * c
                acc = term if acc is None else acc + term
            elems.append(acc)
        return NullIdeal(self, elems)

    def compact_rank(self) -> int:
        return linalg.mat_rank(self.trace_form)

    def generic_centralizer_dim(self, seed: int = 0) -> int:
        """dim of the centralizer of a pseudo-random element (the rank for reductive algebras)."""
        if not self.dim:
            return 0
        rng = random.Random(seed)
        coeffs = [Fraction(rng.randint(-9, 9) or 1) for _ in range(self.dim)]
        n = self.dim
        ad = [[Fraction(0)] * n for _ in range(n)]
        for i, c in enumerate(coeffs):
            for j in range(n):
                for k, v in self.bracket_coords(i, j).items():
                    ad[k][j] += c * v
        return n - linalg.mat_rank(ad)


@dataclass
class NullIdeal:
    algebra: Subalgebra
    elements: List[AlgebraElement]

    @property
    def dim(self) -> int:
        return len(self.elements)

    def is_ideal(self) -> bool:
        vecs = [e.vector() for e in self.elements]
        if not vecs:
            return True
        for x in self.algebra.basis:
            for e in self.elements:
                if linalg.express(vecs, x.bracket(e).vector()) is None:
                    return False
        return True

    def is_abelian(self) -> bool:
        return all(not a.bracket(b).vector() for a, b in combinations(self.elements, 2))

    def acts_nilpotently(self) -> bool:
        for e in self.elements:
            m = [list(r) for r in e.matrix]
            cube = linalg.mat_mul(linalg.mat_mul(m, m), m)
            if any(any(r) for r in cube):
                return False
        return True


# ---------------------------------------------------------------------------


def so_basis(frame: FrameContext) -> List[AlgebraElement]:
    n = frame.dim
    return [AlgebraElement.basis_element(frame, a, b) for a in range(n) for b in range(a + 1, n)]


def _common_model(spinors: Sequence[Spinor]) -> SpinorModel:
    if not spinors:
        raise ValueError("need at least one spinor")
    model = spinors[0].model
    for s in spinors[1:]:
        if s.model != model:
            raise SpinorError("spinors belong to different models")
    return model


def isotropy_algebra(spinors: Sequence[Spinor]) -> Subalgebra:
    """The subalgebra of so(model) annihilating every spinor."""
    model = _common_model(spinors)
    frame = model.frame
    gens = so_basis(frame)
    columns = []
    for x in gens:
        col = {}
        for j, eps in enumerate(spinors):
            for key, v in spin_act(x, eps).real_vector().items():
                col[(j, key)] = v
        columns.append(col)
    rows: Dict[tuple, Dict[int, Fraction]] = {}
    for i, col in enumerate(columns):
        for key, v in col.items():
            rows.setdefault(key, {})[i] = v
    kernel = linalg.nullspace(list(rows.values()), len(gens))
    basis = []
    for vec in kernel:
        acc = None
        for k, c in sorted(vec.items()):
            term = gens[k] * c
            acc = term if acc is None else acc + term
        basis.append(acc)
    return Subalgebra.from_basis(frame, basis)


def transverse_multi_indices(frame: FrameContext, k: int):
    return list(combinations(list(frame.transverse), k))


def invariant_forms(h: Subalgebra, k: int, transverse: bool = False) -> List[Form]:
    """Basis of the h-invariant real k-forms.

    With ``transverse=True`` the unknown is a form ``psi`` on the transverse
    directions and the condition is invariance of ``e^- ^ psi`` (lightcone
    frames) or of ``psi`` itself (euclidean frames).
    """
    frame = h.frame
    null = transverse and frame.is_lightcone
    if transverse:
        keys = transverse_multi_indices(frame, k)
    else:
        keys = list(combinations(range(frame.dim), k))
    if not h.basis:
        return [Form(frame, k, {I: 1}) for I in keys]
    rows: Dict[tuple, Dict[int, Fraction]] = {}
    for u, I in enumerate(keys):
        J = (MINUS,) + I if null else I
        for xi, x in enumerate(h.basis):
            for K, v in act_terms(x.matrix, {J: Fraction(1)}).items():
                rows.setdefault((xi, K), {})[u] = v
    kernel = linalg.nullspace(list(rows.values()), len(keys))
    # present the basis in reduced form so the output is canonical
    reduced = linalg.rref(kernel)
    return [Form(frame, k, {keys[u]: v for u, v in vec.items()}) for _, vec in reduced]


def form_stabilizer(frame: FrameContext, forms: Sequence[Form], transverse: bool = False) -> Subalgebra:
    """Elements of so(frame) annihilating every form.

    With ``transverse=True`` only rotations of the transverse block are
    considered and each form ``psi`` is tested as ``e^- ^ psi`` in
    lightcone frames.
    """
    null = transverse and frame.is_lightcone
    if transverse:
        t = list(frame.transverse)
        gens = [AlgebraElement.basis_element(frame, a, b) for a, b in combinations(t, 2)]
    else:
        gens = so_basis(frame)
    rows: Dict[tuple, Dict[int, Fraction]] = {}
    for f, phi in enumerate(forms):
        terms = {(MINUS,) + I: c for I, c in phi.terms.items()} if null else phi.terms
        for u, x in enumerate(gens):
            for K, v in act_terms(x.matrix, terms).items():
                if v.re:
                    rows.setdefault((f, K, 0), {})[u] = v.re
                if v.im:
                    rows.setdefault((f, K, 1), {})[u] = v.im
    kernel = linalg.nullspace(list(rows.values()), len(gens))
    basis = []
    for vec in kernel:
        acc = None
        for k, c in sorted(vec.items()):
            term = gens[k] * c
            acc = term if acc is None else acc + term
        basis.append(acc)
    return Subalgebra.from_basis(frame, basis)


def form_vector(phi: Form) -> Dict[Tuple, Fraction]:
    out = {}
    for I, c in phi.terms.items():
        if c.re:
            out[(I, 0)] = c.re
        if c.im:
            out[(I, 1)] = c.im
    return out


def bilinear_space(spinors: Sequence[Spinor], k: int) -> Tuple[int, List[Form]]:
    """Dimension and a reduced basis of the span of all ordered-pair k-form bilinears."""
    model = _common_model(spinors)
    forms = [bilinear(a, b, k) for a in spinors for b in spinors]
    complex_valued = any(not f.is_real for f in forms)
    keys = sorted({I for f in forms for I in f.terms})
    index = {I: n for n, I in enumerate(keys)}
    rows = []
    for f in forms:
        if complex_valued:
            rows.append({index[I]: c for I, c in f.terms.items()})
        else:
            rows.append({index[I]: c.re for I, c in f.terms.items()})
    reduced = linalg.rref(rows)
    basis = [Form(model.frame, k, {keys[u]: v for u, v in r.items()}) for _, r in reduced]
    return len(basis), basis


def annihilates(h: Subalgebra, phi: Form) -> bool:
    return all(not x.act_on_form(phi) for x in h.basis)


# ---------------------------------------------------------------------------
# identification


@dataclass
class IsotropyReport:
    dim: int
    ideal_dim: int
    compact_dim: int
    radical_dim: int
    levi_dim: int
    killing_signature: Tuple[int, int, int]
    centralizer_dim: int
    ideal_checks: Dict[str, bool]
    name: str

    def as_dict(self) -> dict:
        return {
            "dim": self.dim,
            "abelian_ideal_dim": self.ideal_dim,
            "compact_dim": self.compact_dim,
            "radical_dim": self.radical_dim,
            "levi_dim": self.levi_dim,
            "killing_signature": list(self.killing_signature),
            "generic_centralizer_dim": self.centralizer_dim,
            "ideal_checks": self.ideal_checks,
            "name": self.name,
        }


# (model, total dim, null-ideal dim) -> group name
_GROUP_NAMES = {
    ("10d", 29, 8): "Spin(7)xR8",
    ("10d", 23, 8): "SU(4)xR8",
    ("10d", 18, 8): "Sp(2)xR8",
    ("10d", 14, 8): "Sp(1)xSp(1)xR8",
    ("10d", 11, 8): "Sp(1)xR8",
    ("10d", 9, 8): "U(1)xR8",
    ("10d", 8, 8): "{1}xR8",
    ("10d", 14, 0): "G2",
    ("10d", 8, 0): "SU(3)",
    ("10d", 3, 0): "SU(2)",
    ("10d", 0, 0): "{1}",
    ("8d", 21, 0): "Spin(7)",
    ("8d", 15, 0): "SU(4)",
    ("8d", 14, 0): "G2",
    ("8d", 10, 0): "Sp(2)",
    ("8d", 8, 0): "SU(3)",
    ("8d", 6, 0): "Sp(1)xSp(1)",
    ("8d", 3, 0): "Sp(1)=SU(2)",
    ("8d", 1, 0): "U(1)",
    ("8d", 0, 0): "{1}",
}

# dims of the compact factor K for the names above
_COMPACT_DIMS = {
    "Spin(7)": 21, "SU(4)": 15, "Sp(2)": 10, "Sp(1)xSp(1)": 6, "Sp(1)": 3,
    "U(1)": 1, "{1}": 0, "G2": 14, "SU(3)": 8, "SU(2)": 3, "Sp(1)=SU(2)": 3,
}


def analyse(h: Subalgebra, model: SpinorModel, seed: int = 0) -> IsotropyReport:
    ideal = h.null_ideal() if h.frame.is_lightcone else NullIdeal(h, [])
    checks = {
        "closed": h.verify_certificate(),
        "ideal": ideal.is_ideal(),
        "abelian": ideal.is_abelian(),
        "nilpotent": ideal.acts_nilpotently(),
    }
    radical = h.radical_dimension()
    name = _GROUP_NAMES.get((model.short_name, h.dim, ideal.dim), "unrecognized")
    return IsotropyReport(
        dim=h.dim,
        ideal_dim=ideal.dim,
        compact_dim=h.compact_rank(),
        radical_dim=radical,
        levi_dim=h.dim - radical,
        killing_signature=h.killing_signature(),
        centralizer_dim=h.generic_centralizer_dim(seed),
        ideal_checks=checks,
        name=name,
    )


def compact_factor_name(name: str) -> str:
    return name[:-3] if name.endswith("xR8") else name
