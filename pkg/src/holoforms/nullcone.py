"""Forms null along kappa = e^- in a lightcone frame.

A form is null along ``kappa`` when ``kappa ^ phi = 0`` and
``kappa barwedge phi = 0``; for ``kappa = e^-`` this means every term
contains ``e^-`` and none contains ``e^+``.  The transverse representative
``breve(phi)`` strips the ``e^-`` factor.  It depends on the choice of
transverse frame, but the products

    lam curlywedge phi     = lam ^ breve(phi)
    lam barcurlywedge phi  = e^- ^ i_{raise(breve lam)} breve(phi)

do not; :func:`patch_transform` implements the frame changes that fix e^-
and the metric so that this can be tested.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

from .exterior import (
    FrameContext,
    FrameMismatch,
    Form,
    MINUS,
    PLUS,
    barwedge,
    inner,
    raise_index,
    substitute_terms,
    wedge,
)


class NullityError(ValueError):
    pass


def kappa(frame: FrameContext) -> Form:
    _require_lightcone(frame)
    return Form(frame, 1, {(MINUS,): 1})


def _require_lightcone(frame: FrameContext):
    if not frame.is_lightcone:
        raise FrameMismatch(f"null forms need a lightcone frame, got {frame.describe()}")


def is_null_along(kappa_form: Form, phi: Form) -> bool:
    """``kappa ^ phi == 0`` and ``kappa barwedge phi == 0``."""
    if kappa_form.frame != phi.frame:
        raise FrameMismatch(f"{kappa_form.frame.describe()} vs {phi.frame.describe()}")
    if kappa_form.degree != 1 or not kappa_form:
        raise ValueError("kappa must be a nonzero 1-form")
    if wedge(kappa_form, phi):
        return False
    if phi.degree == 0:
        return True
    return not barwedge(kappa_form, phi)


def _has_null_shape(phi: Form) -> bool:
    return all(I and I[0] == MINUS and (len(I) < 2 or I[1] != PLUS) for I in phi.terms)


class NullForm:
    """A form null along e^- ; the ambient form is stored, not its representative."""

    __slots__ = ("underlying",)
    kappa_index = MINUS

    def __init__(self, phi: Form):
        _require_lightcone(phi.frame)
        if not _has_null_shape(phi):
            raise NullityError(f"form is not null along e^-: {phi}")
        self.underlying = phi

    @property
    def frame(self):
        return self.underlying.frame

    @property
    def degree(self) -> int:
        return self.underlying.degree

    @property
    def parity(self) -> int:
        return (self.degree - 1) % 2

    def breve(self) -> Form:
        return breve(self.underlying)

    def __eq__(self, other):
        return isinstance(other, NullForm) and self.underlying == other.underlying

    def __hash__(self):
        return hash(self.underlying)

    def __repr__(self):
        return f"NullForm({self.underlying})"


def _as_form(x) -> Form:
    return x.underlying if isinstance(x, NullForm) else x


def _checked(x) -> Form:
    phi = _as_form(x)
    _require_lightcone(phi.frame)
    if not _has_null_shape(phi):
        raise NullityError(f"form is not null along e^-: {phi}")
    return phi


def parity(phi) -> int:
    """Superalgebra grading of a null form: ``(degree - 1) mod 2``."""
    return (_as_form(phi).degree - 1) % 2


def breve(phi) -> Form:
    """Transverse representative: ``phi = e^- ^ breve(phi)``."""
    phi = _checked(phi)
    if phi.degree == 0:
        raise NullityError("a degree-0 form is never null")
    return Form._make(phi.frame, phi.degree - 1, {I[1:]: c for I, c in phi.terms.items()})


def from_transverse(psi: Form) -> Form:
    """``e^- ^ psi`` for a transverse ``psi``."""
    return wedge(kappa(psi.frame), psi)


def curlywedge(lam, phi) -> Form:
    lam, phi = _checked(lam), _checked(phi)
    if lam.frame != phi.frame:
        raise FrameMismatch("operands live in different frames")
    return wedge(lam, breve(phi))


def barcurlywedge(lam, phi) -> Form:
    lam, phi = _checked(lam), _checked(phi)
    if lam.frame != phi.frame:
        raise FrameMismatch("operands live in different frames")
    bl, bp = breve(lam), breve(phi)
    degree = lam.degree + phi.degree - 3
    if bl.degree == 0 or bp.degree == 0:
        # i of a degree-0 vector form, or of anything on a 0-form, vanishes
        return Form.zero(lam.frame, max(degree, 0))
    return wedge(kappa(lam.frame), inner(raise_index(bl), bp))


def curly_power(phi, k: int) -> Form:
    """``phi curlywedge phi curlywedge ... `` (k factors)."""
    if k < 1:
        raise ValueError("power must be >= 1")
    out = _checked(phi)
    for _ in range(k - 1):
        out = curlywedge(out, phi)
    return out


# ---------------------------------------------------------------------------
# frame patching


@dataclass(frozen=True)
class PatchTransform:
    """An element ``(O, w)`` of SO(n-2) x| R^{n-2} acting on lightcone coframes."""

    O: Tuple[Tuple[Fraction, ...], ...]
    w: Tuple[Fraction, ...]

    def __post_init__(self):
        O = tuple(tuple(Fraction(x) for x in row) for row in self.O)
        w = tuple(Fraction(x) for x in self.w)
        object.__setattr__(self, "O", O)
        object.__setattr__(self, "w", w)
        m = len(O)
        if any(len(r) != m for r in O) or len(w) != m:
            raise ValueError("O must be square and match the length of w")
        for i in range(m):
            for j in range(m):
                dot = sum(O[k][i] * O[k][j] for k in range(m))
                if dot != (1 if i == j else 0):
                    raise ValueError("O is not orthogonal")

    @classmethod
    def identity(cls, transverse_dim: int) -> "PatchTransform":
        return cls(
            tuple(tuple(Fraction(int(i == j)) for j in range(transverse_dim)) for i in range(transverse_dim)),
            tuple(Fraction(0) for _ in range(transverse_dim)),
        )

    def coframe_images(self, frame: FrameContext) -> List[dict]:
        """Rows expressing the transformed coframe in the original one.

        ``e^-' = e^-``, ``e^+' = e^+ - |w|^2/2 e^- + w_i e^i``,
        ``e^i' = (O^{-1})^i_j (e^j - w^j e^-)``.
        """
        _require_lightcone(frame)
        m = frame.dim - 2
        if len(self.w) != m:
            raise ValueError(f"transform acts on {len(self.w)} transverse directions, frame has {m}")
        w2 = sum(x * x for x in self.w)
        rows: List[dict] = [dict() for _ in range(frame.dim)]
        rows[MINUS][(MINUS,)] = Fraction(1)
        plus = {(PLUS,): Fraction(1)}
        if w2:
            plus[(MINUS,)] = -w2 / 2
        for i, wi in enumerate(self.w):
            if wi:
                plus[(i + 2,)] = wi
        rows[PLUS] = plus
        # O^{-1} = O^T
        for i in range(m):
            row = {}
            lead = Fraction(0)
            for j in range(m):
                oij = self.O[j][i]
                if oij:
                    row[(j + 2,)] = oij
                    lead -= oij * self.w[j]
            if lead:
                row[(MINUS,)] = lead
            rows[i + 2] = row
        return rows

    def matrix(self, frame: FrameContext):
        rows = self.coframe_images(frame)
        n = frame.dim
        return [[row.get((b,), Fraction(0)) for b in range(n)] for row in rows]


def patch_transform(phi, t: PatchTransform) -> Form:
    """Re-express a form written on the transformed coframe in the original coframe."""
    phi = _as_form(phi)
    images = t.coframe_images(phi.frame)
    return Form._make(phi.frame, phi.degree, substitute_terms(phi.terms, images))


def transformed_metric(frame: FrameContext, t: PatchTransform):
    """``A^T g A`` where ``A`` holds the coframe images; equals ``g`` exactly."""
    A = t.matrix(frame)
    n = frame.dim
    return [
        [
            sum(frame.g(a, d) * A[a][b] * A[d][c] for a in range(n) for d, _ in frame.metric_partners(a))
            for c in range(n)
        ]
        for b in range(n)
    ]


_ROT = (Fraction(3, 5), Fraction(4, 5))


def random_orthogonal(rng: random.Random, m: int):
    """Signed permutation composed with rational (3/5, 4/5) plane rotations."""
    perm = list(range(m))
    rng.shuffle(perm)
    O = [[Fraction(0)] * m for _ in range(m)]
    for i, p in enumerate(perm):
        O[i][p] = Fraction(rng.choice((-1, 1)))
    idx = list(range(m))
    rng.shuffle(idx)
    for a in range(0, m - 1, 2):
        if rng.random() < 0.7:
            i, j = idx[a], idx[a + 1]
            c, s = _ROT if rng.random() < 0.5 else (_ROT[1], _ROT[0])
            if rng.random() < 0.5:
                s = -s
            R = [[Fraction(int(r == q)) for q in range(m)] for r in range(m)]
            R[i][i], R[i][j], R[j][i], R[j][j] = c, -s, s, c
            O = [[sum(R[r][k] * O[k][q] for k in range(m)) for q in range(m)] for r in range(m)]
    return O


def random_patch_transform(rng: random.Random, transverse_dim: int, wmax: int = 3) -> PatchTransform:
    O = random_orthogonal(rng, transverse_dim)
    w = [Fraction(rng.randint(-wmax, wmax), rng.randint(1, 3)) for _ in range(transverse_dim)]
    return PatchTransform(tuple(map(tuple, O)), tuple(w))


def random_null_form(rng: random.Random, frame: FrameContext, degree: int, terms: int = 4, cmax: int = 3) -> Form:
    """A random null form ``e^- ^ psi`` with ``psi`` transverse of degree ``degree - 1``."""
    from itertools import combinations

    keys = list(combinations(list(frame.transverse), degree - 1))
    chosen = rng.sample(keys, min(terms, len(keys)))
    psi = {}
    for K in chosen:
        c = rng.randint(-cmax, cmax)
        if c:
            psi[K] = Fraction(c, rng.randint(1, 2))
    return from_transverse(Form(frame, degree - 1, psi))


def globality_report(seed: int = 0, trials: int = 200, dims=(4, 5, 6, 7, 8)) -> dict:
    """Patch equivariance of curlywedge and barcurlywedge on random null forms.

    Also checks that ``e^-`` and the metric are unchanged by every transform.
    """
    rng = random.Random(seed)
    passed = {"curlywedge": 0, "barcurlywedge": 0, "kappa": 0, "metric": 0}
    failures = []
    for t in range(trials):
        frame = FrameContext.lightcone(rng.choice(dims))
        m = frame.dim - 2
        lam = random_null_form(rng, frame, rng.randint(2, min(4, m + 1)))
        phi = random_null_form(rng, frame, rng.randint(2, min(4, m + 1)))
        tr = random_patch_transform(rng, m)
        P = lambda x: patch_transform(x, tr)  # noqa: E731
        checks = {
            "curlywedge": P(curlywedge(lam, phi)) == curlywedge(P(lam), P(phi)),
            "barcurlywedge": P(barcurlywedge(lam, phi)) == barcurlywedge(P(lam), P(phi)),
            "kappa": P(kappa(frame)) == kappa(frame),
            "metric": transformed_metric(frame, tr) == [list(r) for r in frame.metric],
        }
        for key, ok in checks.items():
            if ok:
                passed[key] += 1
            elif len(failures) < 5:
                failures.append({"trial": t, "check": key, "dim": frame.dim})
    return {"seed": seed, "trials": trials, "passed": passed, "failures": failures,
            "pass": all(v == trials for v in passed.values())}
