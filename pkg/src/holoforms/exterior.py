"""Pointwise exterior algebra over a metric frame.

Forms store one coefficient per strictly increasing multi-index, i.e. the
full antisymmetric component ``phi_{i1...ip}``.  With this storage the usual
``1/(l!(p-1)!)`` prefactors of coordinate formulas cancel against the sums
over orderings, so no factorial division happens anywhere.

Contraction convention: ``i_{e_j}(e^{i1...ip})`` picks up ``(-1)**(k-1)``
when ``j`` is the k-th index.  Every structure constant computed downstream
inherits this choice.

The low-level ``*_terms`` helpers only need ``+``, ``*``, negation and
truthiness from their coefficients, so the polynomial-coefficient module
reuses them unchanged.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from types import MappingProxyType
from typing import Dict, Iterable, Mapping, Optional, Tuple

from .scalar import Scalar, format_scalar, format_rational

MultiIndex = Tuple[int, ...]

EUCLIDEAN = "euclidean"
LIGHTCONE = "lightcone"

MINUS = 0  # index of e^- in a lightcone frame
PLUS = 1  # index of e^+ in a lightcone frame


class FrameMismatch(ValueError):
    pass


@dataclass(frozen=True)
class FrameContext:
    """An orthonormal (euclidean) or lightcone frame of dimension ``dim``.

    Lightcone frames order the basis as ``(e^-, e^+, e^1, ..., e^{n-2})`` with
    ``g = 2 e^- e^+ + sum_i e^i e^i``.  Euclidean frames use indices
    ``0..n-1`` printed as ``1..n``.
    """

    dim: int
    kind: str = EUCLIDEAN

    def __post_init__(self):
        if not isinstance(self.dim, int) or self.dim < 1:
            raise ValueError(f"frame dimension must be a positive integer, got {self.dim!r}")
        if self.kind not in (EUCLIDEAN, LIGHTCONE):
            raise ValueError(f"unknown frame kind {self.kind!r}")
        if self.kind == LIGHTCONE and self.dim < 2:
            raise ValueError("a lightcone frame needs dimension >= 2")

    @classmethod
    def euclidean(cls, n: int) -> "FrameContext":
        return cls(n, EUCLIDEAN)

    @classmethod
    def lightcone(cls, n: int) -> "FrameContext":
        return cls(n, LIGHTCONE)

    @property
    def is_lightcone(self) -> bool:
        return self.kind == LIGHTCONE

    def g(self, a: int, b: int) -> Fraction:
        if self.kind == LIGHTCONE and a < 2 and b < 2:
            return Fraction(1) if a != b else Fraction(0)
        return Fraction(1) if a == b else Fraction(0)

    # Both frame kinds have g^{-1} = g in these bases.
    ginv = g

    @cached_property
    def metric(self) -> Tuple[Tuple[Fraction, ...], ...]:
        return tuple(tuple(self.g(a, b) for b in range(self.dim)) for a in range(self.dim))

    @cached_property
    def inverse_metric(self) -> Tuple[Tuple[Fraction, ...], ...]:
        return self.metric

    @cached_property
    def _metric_rows(self) -> Tuple[Tuple[Tuple[int, Fraction], ...], ...]:
        # sparse rows of g (== g^{-1}): partner index and value
        return tuple(
            tuple((b, v) for b, v in enumerate(row) if v) for row in self.metric
        )

    def metric_partners(self, a: int):
        return self._metric_rows[a]

    @property
    def transverse(self) -> range:
        return range(2, self.dim) if self.kind == LIGHTCONE else range(self.dim)

    def label(self, a: int) -> str:
        if not 0 <= a < self.dim:
            raise IndexError(f"frame index {a} out of range for dimension {self.dim}")
        if self.kind == LIGHTCONE:
            if a == MINUS:
                return "m"
            if a == PLUS:
                return "p"
            return str(a - 1)
        return str(a + 1)

    def transverse_index(self, label: int) -> int:
        """Frame index of the transverse direction printed as ``label``."""
        off = 1 if self.kind == LIGHTCONE else -1
        a = label + off
        lo = 2 if self.kind == LIGHTCONE else 0
        if not lo <= a < self.dim:
            raise IndexError(f"index {label} out of range for {self.describe()}")
        return a

    def describe(self) -> str:
        return f"{self.kind} frame of dimension {self.dim}"


# ---------------------------------------------------------------------------
# coefficient-agnostic kernels on term dictionaries


def merge_sign(a: MultiIndex, b: MultiIndex):
    """Return ``(sign, sorted(a+b))`` for ``e^a ^ e^b``, or ``(0, None)``."""
    if not a:
        return 1, b
    if not b:
        return 1, a
    inversions = 0
    la = len(a)
    for j in b:
        pos = bisect.bisect_left(a, j)
        if pos < la and a[pos] == j:
            return 0, None
        inversions += la - pos
    merged = tuple(sorted(a + b))
    return (-1 if inversions & 1 else 1), merged


def accumulate(dst: dict, key, value) -> None:
    old = dst.get(key)
    new = value if old is None else old + value
    if new:
        dst[key] = new
    elif old is not None:
        del dst[key]


def wedge_terms(a: Mapping, b: Mapping) -> dict:
    out: dict = {}
    for I, x in a.items():
        for J, y in b.items():
            s, K = merge_sign(I, J)
            if s:
                accumulate(out, K, x * y if s > 0 else -(x * y))
    return out


def group_by_upper(L: Mapping) -> Dict[int, list]:
    by_mu: Dict[int, list] = {}
    for (mu, J), c in L.items():
        by_mu.setdefault(mu, []).append((J, c))
    return by_mu


def inner_terms(L: Mapping, phi: Mapping, by_mu: Optional[dict] = None) -> dict:
    """``i_L phi`` with ``L`` keyed by ``(upper, lower MultiIndex)``."""
    if by_mu is None:
        by_mu = group_by_upper(L)
    out: dict = {}
    for I, c in phi.items():
        for k, mu in enumerate(I):
            entries = by_mu.get(mu)
            if not entries:
                continue
            K = I[:k] + I[k + 1:]
            ck = -c if k & 1 else c
            for J, l in entries:
                s, R = merge_sign(J, K)
                if s:
                    v = l * ck
                    accumulate(out, R, v if s > 0 else -v)
    return out


def raise_terms(phi: Mapping, frame: FrameContext) -> dict:
    out: dict = {}
    for I, c in phi.items():
        for k, rho in enumerate(I):
            K = I[:k] + I[k + 1:]
            ck = -c if k & 1 else c
            for mu, gv in frame.metric_partners(rho):
                accumulate(out, (mu, K), ck * gv if gv != 1 else ck)
    return out


def component(phi: Mapping, indices) -> object:
    """Antisymmetric component ``phi_{indices}`` for an arbitrary index tuple."""
    idx = tuple(indices)
    if len(set(idx)) != len(idx):
        return 0
    order = sorted(range(len(idx)), key=lambda t: idx[t])
    key = tuple(idx[t] for t in order)
    c = phi.get(key)
    if c is None:
        return 0
    return -c if permutation_parity(order) else c


def permutation_parity(perm) -> int:
    """0 for even, 1 for odd permutations of ``range(len(perm))``."""
    seen = [False] * len(perm)
    parity = 0
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        parity ^= (length - 1) & 1
    return parity


def substitute_terms(terms: Mapping, images) -> dict:
    """Replace each basis 1-form ``e^a`` by the 1-form ``images[a]`` (term dict)."""
    out: dict = {}
    for I, c in terms.items():
        acc = {(): c}
        for a in I:
            acc = wedge_terms(acc, images[a])
            if not acc:
                break
        for K, v in acc.items():
            accumulate(out, K, v)
    return out


def vector_terms_of(L: Mapping, mu: int) -> dict:
    return {J: c for (m, J), c in L.items() if m == mu}


def vbarwedge_terms(L: Mapping, M: Mapping) -> dict:
    """``(L barwedge M)^rho = i_L (M^rho)``."""
    by_mu = group_by_upper(L)
    out: dict = {}
    for rho, entries in group_by_upper(M).items():
        part = inner_terms(L, dict(entries), by_mu)
        for J, c in part.items():
            accumulate(out, (rho, J), c)
    return out


# ---------------------------------------------------------------------------


def _check_multi_index(I, dim: int, degree: int) -> MultiIndex:
    I = tuple(I)
    if len(I) != degree:
        raise ValueError(f"multi-index {I} does not have length {degree}")
    prev = -1
    for a in I:
        if not isinstance(a, int) or a <= prev or a >= dim:
            raise ValueError(f"multi-index {I} is not strictly increasing in 0..{dim - 1}")
        prev = a
    return I


def _clean_terms(terms, check) -> dict:
    out = {}
    items = terms.items() if isinstance(terms, Mapping) else terms
    for k, v in items:
        k = check(k)
        v = Scalar.coerce(v)
        accumulate(out, k, v)
    return out


class Form:
    """A homogeneous exterior form with Scalar coefficients."""

    __slots__ = ("frame", "degree", "_terms")

    def __init__(self, frame: FrameContext, degree: int, terms=None):
        if degree < 0:
            raise ValueError(f"negative degree {degree}")
        self.frame = frame
        self.degree = degree
        self._terms = _clean_terms(
            terms or {}, lambda I: _check_multi_index(I, frame.dim, degree)
        )

    @classmethod
    def _make(cls, frame, degree, terms: dict) -> "Form":
        obj = object.__new__(cls)
        obj.frame = frame
        obj.degree = degree
        obj._terms = terms
        return obj

    @classmethod
    def zero(cls, frame: FrameContext, degree: int) -> "Form":
        return cls._make(frame, degree, {})

    @classmethod
    def scalar(cls, frame: FrameContext, value=1) -> "Form":
        return cls(frame, 0, {(): value})

    @classmethod
    def basis(cls, frame: FrameContext, indices, coef=1) -> "Form":
        idx = tuple(indices)
        order = sorted(range(len(idx)), key=lambda t: idx[t])
        if len(set(idx)) != len(idx):
            return cls.zero(frame, len(idx))
        K = tuple(idx[t] for t in order)
        s = -1 if permutation_parity(order) else 1
        return cls(frame, len(idx), {K: Scalar.coerce(coef) * s})

    @property
    def terms(self) -> Mapping[MultiIndex, Scalar]:
        return MappingProxyType(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def __getitem__(self, indices) -> Scalar:
        return Scalar.coerce(component(self._terms, indices))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    is_zero = property(lambda self: not self._terms)

    def _same(self, other: "Form") -> None:
        if not isinstance(other, Form):
            raise TypeError(f"expected Form, got {type(other).__name__}")
        if other.frame != self.frame:
            raise FrameMismatch(f"{self.frame.describe()} vs {other.frame.describe()}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Form):
            return NotImplemented
        return (
            self.frame == other.frame
            and self.degree == other.degree
            and self._terms == other._terms
        )

    def __hash__(self):
        return hash((self.frame, self.degree, frozenset(self._terms.items())))

    def __add__(self, other: "Form") -> "Form":
        self._same(other)
        if other.degree != self.degree:
            raise ValueError(f"cannot add forms of degree {self.degree} and {other.degree}")
        out = dict(self._terms)
        for k, v in other._terms.items():
            accumulate(out, k, v)
        return Form._make(self.frame, self.degree, out)

    def __sub__(self, other: "Form") -> "Form":
        return self + (-other)

    def __neg__(self) -> "Form":
        return Form._make(self.frame, self.degree, {k: -v for k, v in self._terms.items()})

    def __mul__(self, c) -> "Form":
        if isinstance(c, Form):
            return NotImplemented
        c = Scalar.coerce(c)
        if not c:
            return Form.zero(self.frame, self.degree)
        return Form._make(self.frame, self.degree, {k: v * c for k, v in self._terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, c) -> "Form":
        return self * (1 / Scalar.coerce(c))

    def wedge(self, other: "Form") -> "Form":
        return wedge(self, other)

    __xor__ = wedge

    def conj(self) -> "Form":
        return Form._make(self.frame, self.degree, {k: v.conj() for k, v in self._terms.items()})

    def real_part(self) -> "Form":
        return Form(self.frame, self.degree, {k: v.re for k, v in self._terms.items()})

    def imag_part(self) -> "Form":
        return Form(self.frame, self.degree, {k: v.im for k, v in self._terms.items()})

    @property
    def is_real(self) -> bool:
        return all(v.is_real for v in self._terms.values())

    def __str__(self) -> str:
        return format_form(self)

    def __repr__(self) -> str:
        return f"Form<{self.degree}>({format_form(self)})"


class VectorForm:
    """A vector-valued form: terms keyed by ``(upper index, lower MultiIndex)``."""

    __slots__ = ("frame", "lower_degree", "_terms")

    def __init__(self, frame: FrameContext, lower_degree: int, terms=None):
        if lower_degree < 0:
            raise ValueError(f"negative lower degree {lower_degree}")
        self.frame = frame
        self.lower_degree = lower_degree

        def check(key):
            mu, J = key
            if not isinstance(mu, int) or not 0 <= mu < frame.dim:
                raise ValueError(f"upper index {mu} out of range")
            return mu, _check_multi_index(J, frame.dim, lower_degree)

        self._terms = _clean_terms(terms or {}, check)

    @classmethod
    def _make(cls, frame, lower_degree, terms: dict) -> "VectorForm":
        obj = object.__new__(cls)
        obj.frame = frame
        obj.lower_degree = lower_degree
        obj._terms = terms
        return obj

    @classmethod
    def identity(cls, frame: FrameContext) -> "VectorForm":
        """The identity endomorphism viewed as a vector 1-form."""
        return cls(frame, 1, {(a, (a,)): 1 for a in range(frame.dim)})

    @classmethod
    def vector(cls, frame: FrameContext, components) -> "VectorForm":
        return cls(frame, 0, {(a, ()): c for a, c in enumerate(components) if c})

    @property
    def terms(self):
        return MappingProxyType(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def __getitem__(self, key) -> Scalar:
        mu, J = key
        return Scalar.coerce(component(vector_terms_of(self._terms, mu), J))

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, VectorForm):
            return NotImplemented
        return (
            self.frame == other.frame
            and self.lower_degree == other.lower_degree
            and self._terms == other._terms
        )

    def __hash__(self):
        return hash((self.frame, self.lower_degree, frozenset(self._terms.items())))

    def __add__(self, other: "VectorForm") -> "VectorForm":
        if other.frame != self.frame:
            raise FrameMismatch(f"{self.frame.describe()} vs {other.frame.describe()}")
        if other.lower_degree != self.lower_degree:
            raise ValueError("cannot add vector forms of different degree")
        out = dict(self._terms)
        for k, v in other._terms.items():
            accumulate(out, k, v)
        return VectorForm._make(self.frame, self.lower_degree, out)

    def __neg__(self) -> "VectorForm":
        return VectorForm._make(self.frame, self.lower_degree, {k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c) -> "VectorForm":
        c = Scalar.coerce(c)
        if not c:
            return VectorForm._make(self.frame, self.lower_degree, {})
        return VectorForm._make(self.frame, self.lower_degree, {k: v * c for k, v in self._terms.items()})

    __rmul__ = __mul__

    def upper_component(self, mu: int) -> Form:
        """The form ``L^mu`` of degree ``lower_degree``."""
        return Form._make(self.frame, self.lower_degree, vector_terms_of(self._terms, mu))

    def __repr__(self) -> str:
        parts = [
            f"{format_scalar(c)}*d{self.frame.label(mu)}(x){_index_name(self.frame, J)}"
            for (mu, J), c in self.items()
        ]
        return f"VectorForm<{self.lower_degree}>(" + (" + ".join(parts) or "0") + ")"


# ---------------------------------------------------------------------------
# operations


def _require_same_frame(*objs) -> FrameContext:
    frame = objs[0].frame
    for o in objs[1:]:
        if o.frame != frame:
            raise FrameMismatch(f"{frame.describe()} vs {o.frame.describe()}")
    return frame


def wedge(a: Form, b: Form) -> Form:
    frame = _require_same_frame(a, b)
    return Form._make(frame, a.degree + b.degree, wedge_terms(a._terms, b._terms))


def wedge_all(forms: Iterable[Form]) -> Form:
    forms = list(forms)
    if not forms:
        raise ValueError("wedge_all needs at least one form")
    out = forms[0]
    for f in forms[1:]:
        out = wedge(out, f)
    return out


def raise_index(phi: Form, frame: Optional[FrameContext] = None) -> VectorForm:
    """Raise the first index of ``phi`` with the inverse metric."""
    frame = frame or phi.frame
    if frame != phi.frame:
        raise FrameMismatch(f"{phi.frame.describe()} vs {frame.describe()}")
    if phi.degree < 1:
        raise ValueError("cannot raise an index of a degree-0 form")
    return VectorForm._make(frame, phi.degree - 1, raise_terms(phi._terms, frame))


def lower_index(L: VectorForm) -> Form:
    """Inverse of :func:`raise_index`; fails if the lowered tensor is not alternating."""
    frame = L.frame
    tensor: dict = {}
    for (mu, K), c in L._terms.items():
        for rho, gv in frame.metric_partners(mu):
            accumulate(tensor, (rho, K), c * gv)
    p = L.lower_degree + 1
    out: dict = {}
    for (rho, K), c in tensor.items():
        s, I = merge_sign((rho,), K)
        if not s:
            raise ValueError("lowered tensor has a repeated index; not a form")
        val = c if s > 0 else -c
        if I in out and out[I] != val:
            raise ValueError("lowered tensor is not totally antisymmetric")
        out[I] = val
    phi = Form._make(frame, p, out)
    if raise_index(phi)._terms != L._terms:
        raise ValueError("lowered tensor is not totally antisymmetric")
    return phi


def inner(L: VectorForm, phi: Form) -> Form:
    frame = _require_same_frame(L, phi)
    if phi.degree == 0:
        degree = max(L.lower_degree - 1, 0)
        return Form.zero(frame, degree)
    degree = phi.degree + L.lower_degree - 1
    return Form._make(frame, degree, inner_terms(L._terms, phi._terms))


def barwedge(lam: Form, chi: Form) -> Form:
    """``lam barwedge chi = i_{raise(lam)} chi``."""
    _require_same_frame(lam, chi)
    if lam.degree < 1 or chi.degree < 1:
        raise ValueError("barwedge needs operands of degree >= 1")
    return inner(raise_index(lam), chi)


def vbarwedge(L: VectorForm, M: VectorForm) -> VectorForm:
    """Vector-form bracket ``(L barwedge M)^rho = i_L(M^rho)``."""
    frame = _require_same_frame(L, M)
    degree = L.lower_degree + M.lower_degree - 1
    if M.lower_degree == 0:
        return VectorForm._make(frame, max(degree, 0), {})
    return VectorForm._make(frame, degree, vbarwedge_terms(L._terms, M._terms))


def inner_vector(L: VectorForm, M: VectorForm) -> VectorForm:
    return vbarwedge(L, M)


def metric_pair(a: Form, b: Form) -> Scalar:
    """``g(a, b)`` for 1-forms, via the inverse metric."""
    _require_same_frame(a, b)
    if a.degree != 1 or b.degree != 1:
        raise ValueError("metric_pair takes two 1-forms")
    total = Scalar.coerce(0)
    for (mu,), x in a._terms.items():
        for nu, gv in a.frame.metric_partners(mu):
            y = b._terms.get((nu,))
            if y is not None:
                total = total + x * y * gv
    return total


# ---------------------------------------------------------------------------
# text output (the parser lives in holoforms.expressions)


def _index_name(frame: FrameContext, I: MultiIndex) -> str:
    if not I:
        return ""
    labels = [frame.label(a) for a in I]
    transverse = [lab for lab in labels if lab not in ("m", "p")]
    if any(len(lab) > 1 for lab in transverse):
        return "e(" + ",".join(labels) + ")"
    return "e" + "".join(labels)


def format_term(frame: FrameContext, I: MultiIndex, c: Scalar, first: bool) -> str:
    name = _index_name(frame, I)
    if c.is_real:
        neg = c.re < 0
        mag = -c.re if neg else c.re
        if name and mag == 1:
            body = name
        else:
            body = format_rational(mag) + ("*" + name if name else "")
        sign = "-" if neg else ("" if first else "+")
        return sign + body
    body = "(" + format_scalar(c) + ")" + ("*" + name if name else "")
    return body if first else "+" + body


def format_form(phi: Form) -> str:
    items = phi.items()
    if not items:
        return "0"
    return "".join(
        format_term(phi.frame, I, c, first=(n == 0)) for n, (I, c) in enumerate(items)
    )


def omega_transverse(frame: FrameContext, pairs: int) -> Form:
    """``sum_a e^{2a-1, 2a}`` over the first ``pairs`` transverse planes."""
    terms = {}
    for a in range(1, pairs + 1):
        terms[(frame.transverse_index(2 * a - 1), frame.transverse_index(2 * a))] = 1
    return Form(frame, 2, terms)
