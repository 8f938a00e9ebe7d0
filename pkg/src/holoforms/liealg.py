"""Lie (super)algebra presentations generated by form brackets.

Two brackets are supported.  Both are normalised to be graded
antisymmetric, ``[x, y] = -(-1)^{p(x)p(y)} [y, x]``:

* ``barcurlywedge``: ``[x, y] = (-1)^{deg breve x} x barcurlywedge y`` on
  forms null along e^-, parity ``(deg - 1) mod 2``;
* ``barwedge``: ``[x, y] = (-1)^{deg x} x barwedge y``, parity ``deg mod 2``
  (the bracket induced by commutators of the inner derivations
  ``i_{raise x}``).

In both cases the sign factor is +1 whenever the left operand is a
bosonic generator, so for Lie algebras the presentation constants are the
raw products.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .exterior import Form, barwedge
from .nullcone import barcurlywedge, curly_power, breve
from .scalar import Scalar, format_scalar, parse_scalar

BARWEDGE = "barwedge"
BARCURLYWEDGE = "barcurlywedge"

DEFAULT_BOUND = 64


class ClosureError(RuntimeError):
    pass


class JacobiFailure(ValueError):
    pass


def parity_of(degree: int, kind: str) -> int:
    if kind == BARCURLYWEDGE:
        return (degree - 1) % 2
    if kind == BARWEDGE:
        return degree % 2
    raise ValueError(f"unknown bracket kind {kind!r}")


def raw_product(x: Form, y: Form, kind: str) -> Form:
    if kind == BARCURLYWEDGE:
        return barcurlywedge(x, y)
    return barwedge(x, y)


def super_bracket(x: Form, y: Form, kind: str) -> Form:
    raw = raw_product(x, y, kind)
    sign_deg = x.degree - 1 if kind == BARCURLYWEDGE else x.degree
    return -raw if sign_deg % 2 else raw


@dataclass
class Generator:
    label: str
    degree: int
    parity: int
    form: Optional[Form] = None


@dataclass
class Presentation:
    generators: List[Generator]
    brackets: Dict[Tuple[int, int], Dict[int, Fraction]]
    bracket_kind: str = BARCURLYWEDGE
    convention: Dict[str, str] = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return len(self.generators)

    @property
    def parities(self) -> List[int]:
        return [g.parity for g in self.generators]

    def labels(self) -> List[str]:
        return [g.label for g in self.generators]

    def index(self, label: str) -> int:
        for n, g in enumerate(self.generators):
            if g.label == label:
                return n
        raise KeyError(label)

    def bracket(self, i: int, j: int) -> Dict[int, Fraction]:
        """``[x_i, x_j]`` as a coefficient map, using graded antisymmetry for i > j."""
        if i <= j:
            return self.brackets.get((i, j), {})
        pi, pj = self.generators[i].parity, self.generators[j].parity
        sign = 1 if (pi and pj) else -1
        return {k: sign * v for k, v in self.brackets.get((j, i), {}).items()}

    def bracket_vectors(self, a: Dict[int, Fraction], b: Dict[int, Fraction]) -> Dict[int, Fraction]:
        out: Dict[int, Fraction] = {}
        for i, x in a.items():
            for j, y in b.items():
                for k, c in self.bracket(i, j).items():
                    v = out.get(k, 0) + x * y * c
                    if v:
                        out[k] = v
                    else:
                        out.pop(k, None)
        return out

    # -- serialisation ------------------------------------------------------
    def to_json(self) -> dict:
        labels = self.labels()
        brackets = []
        for (i, j), coeffs in sorted(self.brackets.items()):
            if not coeffs:
                continue
            brackets.append(
                {
                    "left": labels[i],
                    "right": labels[j],
                    "result": [{"coef": format_scalar(Scalar(c)), "gen": labels[k]} for k, c in sorted(coeffs.items())],
                }
            )
        return {
            "bracket": self.bracket_kind,
            "generators": [{"label": g.label, "degree": g.degree, "parity": g.parity} for g in self.generators],
            "brackets": brackets,
            "convention": dict(self.convention),
        }

    @classmethod
    def from_json(cls, data) -> "Presentation":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            kind = data.get("bracket", BARCURLYWEDGE)
            gens = [
                Generator(str(g["label"]), int(g["degree"]), int(g.get("parity", parity_of(int(g["degree"]), kind))))
                for g in data["generators"]
            ]
            index = {g.label: n for n, g in enumerate(gens)}
            if len(index) != len(gens):
                raise ValueError("duplicate generator labels")
            brackets: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
            for entry in data.get("brackets", []):
                i, j = index[entry["left"]], index[entry["right"]]
                coeffs = {}
                for term in entry["result"]:
                    c = parse_scalar(str(term["coef"]))
                    if c.im:
                        raise ValueError("structure constants must be real")
                    if c.re:
                        coeffs[index[term["gen"]]] = c.re
                if i > j:
                    # store in canonical order
                    sign = 1 if (gens[i].parity and gens[j].parity) else -1
                    i, j = j, i
                    coeffs = {k: sign * v for k, v in coeffs.items()}
                brackets[(i, j)] = coeffs
        except KeyError as exc:
            raise ValueError(f"malformed presentation: missing {exc}") from None
        return cls(gens, brackets, kind, dict(data.get("convention", {})))

    def with_basis_change(self, matrix: Sequence[Sequence[Fraction]]) -> "Presentation":
        """New presentation in the basis ``y_a = sum_b matrix[a][b] x_b`` (parity-preserving)."""
        n = self.dim
        inv = linalg.mat_inverse(matrix)
        for a in range(n):
            for b in range(n):
                if matrix[a][b] and self.generators[a].parity != self.generators[b].parity:
                    raise ValueError("basis change mixes parities")
        new_gens = [Generator(f"y{a}", self.generators[a].degree, self.generators[a].parity) for a in range(n)]
        brackets = {}
        for a in range(n):
            va = {b: Fraction(matrix[a][b]) for b in range(n) if matrix[a][b]}
            for c in range(a, n):
                vc = {b: Fraction(matrix[c][b]) for b in range(n) if matrix[c][b]}
                res = self.bracket_vectors(va, vc)
                # express res (in x basis) in the y basis: x_b = sum inv[b][d] y_d
                coeffs: Dict[int, Fraction] = {}
                for b, v in res.items():
                    for d in range(n):
                        if inv[b][d]:
                            coeffs[d] = coeffs.get(d, 0) + v * inv[b][d]
                brackets[(a, c)] = {d: v for d, v in coeffs.items() if v}
        return Presentation(new_gens, brackets, self.bracket_kind, dict(self.convention))


# ---------------------------------------------------------------------------
# closure


def _form_vector(phi: Form) -> Dict[tuple, Fraction]:
    out = {}
    for I, c in phi.terms.items():
        if c.re:
            out[(phi.degree, I, 0)] = c.re
        if c.im:
            out[(phi.degree, I, 1)] = c.im
    return out


def proportional(a: Form, b: Form) -> Optional[Scalar]:
    """``c`` with ``a == c*b``, else None."""
    if a.degree != b.degree or set(a.terms) != set(b.terms) or not b:
        return None
    items = iter(b.terms.items())
    I0, b0 = next(items)
    c = a.terms[I0] / b0
    if all(a.terms[I] == c * v for I, v in b.terms.items()):
        return c
    return None


def close(
    generators: Sequence[Tuple[str, Form]],
    bracket: str = BARCURLYWEDGE,
    bound: int = DEFAULT_BOUND,
    convention: Optional[Dict[str, str]] = None,
) -> Presentation:
    """Close a set of forms under the graded bracket and return its presentation.

    Pairs are processed in index order; a bracket outside the current span
    becomes a new generator.  If it is proportional to a curly-wedge power
    of an input generator it is named ``curly^k(label)`` and that power is
    used as the new basis element.
    """
    if bracket not in (BARWEDGE, BARCURLYWEDGE):
        raise ValueError(f"unknown bracket kind {bracket!r}")
    elems: List[Generator] = []
    span = linalg.SpanTracker()
    for label, phi in generators:
        if bracket == BARCURLYWEDGE:
            breve(phi)  # validates nullity
        if not span.add(_form_vector(phi)):
            raise ValueError(f"generator {label!r} is linearly dependent on the previous ones")
        elems.append(Generator(label, phi.degree, parity_of(phi.degree, bracket), phi))
    originals = list(elems)

    results: Dict[Tuple[int, int], Form] = {}
    i = 0
    while i < len(elems):
        for j in range(i + 1):
            a, b = (j, i)
            res = super_bracket(elems[a].form, elems[b].form, bracket)
            results[(a, b)] = res
            if not res or span.coordinates(_form_vector(res)) is not None:
                continue
            label, basis_form = _name_new(res, originals, elems, bracket)
            if len(elems) + 1 > bound:
                raise ClosureError(f"closure exceeded {bound} generators at {label}")
            span.add(_form_vector(basis_form))
            elems.append(Generator(label, basis_form.degree, parity_of(basis_form.degree, bracket), basis_form))
        i += 1

    brackets: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
    for (a, b), res in results.items():
        coords = span.coordinates(_form_vector(res)) if res else {}
        if coords is None:
            raise ClosureError("internal error: bracket left the closed span")
        brackets[(a, b)] = {k: Fraction(v) for k, v in coords.items() if v}
    conv = dict(convention or {})
    return Presentation(elems, brackets, bracket, conv)


def _name_new(res: Form, originals, elems, bracket) -> Tuple[str, Form]:
    if bracket == BARCURLYWEDGE:
        for g in originals:
            step = g.degree - 1
            if step <= 0 or (res.degree - 1) % step:
                continue
            k = (res.degree - 1) // step
            if k < 2:
                continue
            try:
                power = curly_power(g.form, k)
            except ValueError:
                continue
            if power and proportional(res, power) is not None:
                return f"curly^{k}({g.label})", power
    n = len(elems)
    return f"x{n}", res


# ---------------------------------------------------------------------------
# Jacobi and fingerprints


def jacobi_check(p: Presentation, limit: int = 10) -> dict:
    """Graded Jacobi residuals over all ordered generator triples."""
    n = p.dim
    par = p.parities
    violations = []
    count = 0
    for i, j, k in product(range(n), repeat=3):
        count += 1
        total: Dict[int, Fraction] = {}
        for (x, y, z) in ((i, j, k), (j, k, i), (k, i, j)):
            sign = -1 if (par[x] and par[z]) else 1
            inner_br = p.bracket(y, z)
            outer = p.bracket_vectors({x: Fraction(1)}, inner_br)
            for key, v in outer.items():
                nv = total.get(key, 0) + sign * v
                if nv:
                    total[key] = nv
                else:
                    total.pop(key, None)
        if total:
            labels = p.labels()
            violations.append(
                {
                    "triple": [labels[i], labels[j], labels[k]],
                    "residual": {labels[a]: format_scalar(Scalar(v)) for a, v in sorted(total.items())},
                }
            )
            if len(violations) >= limit:
                break
    return {"pass": not violations, "triples": count, "violations": violations}


@dataclass(frozen=True)
class Fingerprint:
    dim: int
    even_dim: int
    odd_dim: int
    center_dim: int
    derived_series: Tuple[int, ...]
    killing_rank: int
    killing_signature: Tuple[int, int, int]
    odd_odd_dim: int
    rank: int
    abelian: bool

    def as_dict(self) -> dict:
        return {
            "dim": self.dim,
            "even_dim": self.even_dim,
            "odd_dim": self.odd_dim,
            "center_dim": self.center_dim,
            "derived_series": list(self.derived_series),
            "killing_rank": self.killing_rank,
            "killing_signature": list(self.killing_signature),
            "odd_odd_dim": self.odd_odd_dim,
            "rank": self.rank,
            "abelian": self.abelian,
        }


def _span_rank(vectors) -> int:
    return linalg.rank([v for v in vectors if v])


def _basis_of(vectors) -> List[Dict[int, Fraction]]:
    return [r for _, r in linalg.rref([v for v in vectors if v])]


def fingerprint(p: Presentation, seed: int = 0) -> Fingerprint:
    n = p.dim
    par = p.parities
    even = [i for i in range(n) if not par[i]]
    odd = [i for i in range(n) if par[i]]

    # centre: sum c_k x_k with [z, x_i] = 0 for all i
    rows: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
    for k in range(n):
        for i in range(n):
            for t, v in p.bracket(k, i).items():
                rows.setdefault((i, t), {})[k] = v
    center_dim = n - linalg.rank(list(rows.values()))

    # derived series
    series = [n]
    current = [{i: Fraction(1)} for i in range(n)]
    while current:
        nxt = []
        for a in range(len(current)):
            for b in range(a, len(current)):
                nxt.append(p.bracket_vectors(current[a], current[b]))
        basis = _basis_of(nxt)
        if len(basis) == len(current):
            break
        series.append(len(basis))
        current = basis
        if not basis:
            break

    # Killing form of the even part, traced over the even subspace
    pos = {i: a for a, i in enumerate(even)}
    ads = []
    for i in even:
        m = [[Fraction(0)] * len(even) for _ in even]
        for j in even:
            for k, v in p.bracket(i, j).items():
                if k in pos:
                    m[pos[k]][pos[j]] = v
        ads.append(m)
    ne = len(even)
    K = [[sum((ads[a][r][s] * ads[b][s][r] for r in range(ne) for s in range(ne)), Fraction(0)) for b in range(ne)] for a in range(ne)]
    sig = linalg.symmetric_signature(K) if ne else (0, 0, 0)

    odd_odd = _span_rank(p.bracket(i, j) for a, i in enumerate(odd) for j in odd[a:])

    # rank: centraliser dimension of a pseudo-random even element
    rng = random.Random(seed)
    rank = 0
    if even:
        z = {i: Fraction(rng.randint(1, 9) * rng.choice((-1, 1))) for i in even}
        ad = {}
        for j in even:
            ad[j] = p.bracket_vectors(z, {j: Fraction(1)})
        rank = ne - _span_rank(ad.values())

    abelian = not any(v for v in p.brackets.values())
    return Fingerprint(
        dim=n,
        even_dim=len(even),
        odd_dim=len(odd),
        center_dim=center_dim,
        derived_series=tuple(series),
        killing_rank=sig[0] + sig[1],
        killing_signature=sig,
        odd_odd_dim=odd_odd,
        rank=rank,
        abelian=abelian,
    )


# ---------------------------------------------------------------------------
# reference algebras


def _matrix_presentation(mats: Sequence, labels=None) -> Presentation:
    vecs = [{(r, c): Fraction(v) for r, row in enumerate(m) for c, v in enumerate(row) if v} for m in mats]
    span = linalg.SpanTracker()
    for v in vecs:
        if not span.add(v):
            raise ValueError("dependent matrices")
    brackets = {}
    for i in range(len(mats)):
        for j in range(i, len(mats)):
            a = linalg.mat_mul(mats[i], mats[j])
            b = linalg.mat_mul(mats[j], mats[i])
            comm = {(r, c): a[r][c] - b[r][c] for r in range(len(a)) for c in range(len(a)) if a[r][c] - b[r][c]}
            coords = span.coordinates(comm)
            brackets[(i, j)] = {k: Fraction(v) for k, v in coords.items() if v}
    labels = labels or [f"t{i}" for i in range(len(mats))]
    gens = [Generator(l, 0, 0) for l in labels]
    return Presentation(gens, brackets, "matrix")


def _so(n: int):
    mats = []
    for a in range(n):
        for b in range(a + 1, n):
            m = [[0] * n for _ in range(n)]
            m[a][b], m[b][a] = 1, -1
            mats.append(m)
    return mats


def _u(n: int):
    """u(n) as real 2n x 2n matrices commuting with the standard complex structure."""
    mats = []

    def embed(re, im):
        m = [[0] * (2 * n) for _ in range(2 * n)]
        for a in range(n):
            for b in range(n):
                m[2 * a][2 * b] = re[a][b]
                m[2 * a + 1][2 * b + 1] = re[a][b]
                m[2 * a][2 * b + 1] = -im[a][b]
                m[2 * a + 1][2 * b] = im[a][b]
        return m

    zero = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(a + 1, n):
            re = [row[:] for row in zero]
            re[a][b], re[b][a] = 1, -1
            mats.append(embed(re, zero))
            im = [row[:] for row in zero]
            im[a][b] = im[b][a] = 1
            mats.append(embed(zero, im))
        im = [row[:] for row in zero]
        im[a][a] = 1
        mats.append(embed(zero, im))
    return mats


def _direct_sum(p: Presentation, q: Presentation) -> Presentation:
    n = p.dim
    gens = list(p.generators) + list(q.generators)
    brackets = dict(p.brackets)
    for (i, j), v in q.brackets.items():
        brackets[(i + n, j + n)] = {k + n: c for k, c in v.items()}
    return Presentation(gens, brackets, p.bracket_kind)


def _abstract(parities, table, labels) -> Presentation:
    gens = [Generator(l, 0, par) for l, par in zip(labels, parities)]
    brackets = {}
    for (i, j), v in table.items():
        brackets[(i, j)] = {k: Fraction(c) for k, c in v.items()}
    return Presentation(gens, brackets, "abstract")


def _reference_algebras() -> Dict[str, Presentation]:
    sp1 = _matrix_presentation(_so(3))
    refs = {
        "sp(1)": sp1,
        "+^2sp(1)": _direct_sum(sp1, _matrix_presentation(_so(3))),
        "so(5)": _matrix_presentation(_so(5)),
        "u(4)": _matrix_presentation(_u(4)),
        "so(8)": _matrix_presentation(_so(8)),
        # rotation J, translations P1 P2, centre Z: [J,P1]=P2, [J,P2]=-P1, [P1,P2]=Z
        "e_hat(2)": _abstract([0, 0, 0, 0], {(0, 1): {2: 1}, (0, 2): {1: -1}, (1, 2): {3: 1}}, ["J", "P1", "P2", "Z"]),
        # supercharge Q, hamiltonian H: [Q,Q]=H
        "s(1)": _abstract([1, 0], {(0, 0): {1: 1}}, ["Q", "H"]),
        # R-symmetry R, Q1 Q2, H: [R,Q1]=Q2, [R,Q2]=-Q1, [Qa,Qa]=H
        "s(2)": _abstract(
            [0, 1, 1, 0],
            {(0, 1): {2: 1}, (0, 2): {1: -1}, (1, 1): {3: 1}, (2, 2): {3: 1}},
            ["R", "Q1", "Q2", "H"],
        ),
    }
    return refs


_REFERENCE_FINGERPRINTS: Optional[Dict[str, Fingerprint]] = None


def reference_fingerprints() -> Dict[str, Fingerprint]:
    global _REFERENCE_FINGERPRINTS
    if _REFERENCE_FINGERPRINTS is None:
        _REFERENCE_FINGERPRINTS = {name: fingerprint(p) for name, p in _reference_algebras().items()}
    return _REFERENCE_FINGERPRINTS


def identify(p: Presentation, fp: Optional[Fingerprint] = None) -> str:
    """Name of the catalog algebra with the same fingerprint, else ``"unrecognized"``.

    Abelian algebras are named ``R`` / ``R^k`` (an odd one-dimensional
    abelian algebra is also reported as ``R``); raises JacobiFailure if the
    presentation is not a (super)algebra.
    """
    report = jacobi_check(p, limit=1)
    if not report["pass"]:
        raise JacobiFailure(f"Jacobi identity fails for {report['violations'][0]['triple']}")
    fp = fp or fingerprint(p)
    if fp.abelian:
        if fp.dim == 1:
            return "R"
        if fp.odd_dim:
            return f"R^({fp.even_dim}|{fp.odd_dim})"
        return f"R^{fp.dim}"
    for name, ref in reference_fingerprints().items():
        if ref == fp:
            return name
    return "unrecognized"


def random_basis_change(p: Presentation, rng: random.Random):
    """Random invertible rational matrix preserving the parity split."""
    n = p.dim
    par = p.parities
    while True:
        m = [[Fraction(0)] * n for _ in range(n)]
        for a in range(n):
            for b in range(n):
                if par[a] == par[b] and (a == b or rng.random() < 0.5):
                    m[a][b] = Fraction(rng.randint(-3, 3), rng.randint(1, 2))
        if linalg.mat_rank(m) == n:
            return m
