"""Clifford modules realised on forms of C^5 (signature (9,1)) and C^4 (R^8).

A spinor is a sparse map from subsets of ``{1..k}`` (stored as bitmasks,
bit ``i-1`` for ``e_i``) to Scalars.  Orthonormal gamma matrices act by

* ten_d:   G0 = -e5^ + e5_|,  G5 = e5^ + e5_|,  Gi = ei^ + ei_|,
           G(i+5) = i(ei^ - ei_|)  for i = 1..4, metric diag(-1, +1^9);
* eight_d: Gi = ei^ + ei_|,  G(i+4) = i(ei^ - ei_|)  for i = 1..4,
           metric +1^8, indices 1..8,

where ``^`` is the wedge and ``_|`` the contraction ``e_i _| e_j = delta_ij``.

Conventions fixed here (all reported by :func:`conventions`):

* reality map ``R = REALITY_SIGN * G6789 o conj`` in ten_d and
  ``REALITY_SIGN * G5678 o conj`` in eight_d; the sign makes ``1+e1234``
  real;
* Dirac product ``<a, b> = DIRAC_SIGN * h(G0 a, b)`` in ten_d, with ``h`` the
  Hermitian product making the subset basis orthonormal (antilinear in the
  first slot), and ``<a, b> = h(a, b)`` in eight_d.  The sign makes the
  1-form bilinear of ``1+e1234`` future pointing;
* bilinears are returned in the model frame: ten_d uses the lightcone frame
  with ``e^-`` proportional (positively) to the 1-form bilinear of
  ``1+e1234``; transverse directions pair up as ``e^{2a-1} = theta^a``,
  ``e^{2a} = theta^{a+5}`` (``theta^{a+4}`` in eight_d), so the complex
  structure of the form realisation becomes ``sum_a e^{2a-1,2a}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from types import MappingProxyType
from typing import Dict, List, Mapping, Sequence, Tuple

from .exterior import (
    FrameContext,
    Form,
    accumulate,
    substitute_terms,
)
from .scalar import I, ONE, Scalar, ZERO, format_rational, format_scalar

TEN_D = "ten_d"
EIGHT_D = "eight_d"

REALITY_SIGN = 1
DIRAC_SIGN = -1


class SpinorError(ValueError):
    pass


@dataclass(frozen=True)
class SpinorModel:
    kind: str

    def __post_init__(self):
        if self.kind not in (TEN_D, EIGHT_D):
            raise SpinorError(f"unknown spinor model {self.kind!r}")

    @classmethod
    def ten_d(cls) -> "SpinorModel":
        return cls(TEN_D)

    @classmethod
    def eight_d(cls) -> "SpinorModel":
        return cls(EIGHT_D)

    @property
    def k(self) -> int:
        return 5 if self.kind == TEN_D else 4

    @property
    def dim_complex(self) -> int:
        return 1 << self.k

    @property
    def dim(self) -> int:
        """Real dimension of the vector representation."""
        return 10 if self.kind == TEN_D else 8

    @property
    def gamma_indices(self) -> range:
        return range(0, 10) if self.kind == TEN_D else range(1, 9)

    def eta(self, a: int) -> int:
        return -1 if (self.kind == TEN_D and a == 0) else 1

    @property
    def short_name(self) -> str:
        return "10d" if self.kind == TEN_D else "8d"

    @property
    def frame(self) -> FrameContext:
        return FrameContext.lightcone(10) if self.kind == TEN_D else FrameContext.euclidean(8)

    @property
    def reality_indices(self) -> Tuple[int, ...]:
        return (6, 7, 8, 9) if self.kind == TEN_D else (5, 6, 7, 8)

    def __str__(self) -> str:
        return self.short_name


def model_from_name(name: str) -> SpinorModel:
    key = name.strip().lower().replace("-", "_")
    if key in ("10d", "ten_d", "10", "10d_lorentz"):
        return SpinorModel.ten_d()
    if key in ("8d", "eight_d", "8", "8d_euclid"):
        return SpinorModel.eight_d()
    raise SpinorError(f"unknown spinor model {name!r}")


def _popcount(x: int) -> int:
    return bin(x).count("1")


class Spinor:
    __slots__ = ("model", "_coeffs")

    def __init__(self, model: SpinorModel, coeffs=None):
        self.model = model
        out: dict = {}
        full = model.dim_complex
        for mask, c in (coeffs or {}).items():
            if isinstance(mask, (tuple, list, frozenset, set)):
                mask = subset_mask(mask, model)
            if not isinstance(mask, int) or not 0 <= mask < full:
                raise SpinorError(f"subset {mask!r} out of range for {model}")
            accumulate(out, mask, Scalar.coerce(c))
        self._coeffs = out

    @classmethod
    def _make(cls, model, coeffs: dict) -> "Spinor":
        obj = object.__new__(cls)
        obj.model = model
        obj._coeffs = coeffs
        return obj

    @classmethod
    def basis(cls, model: SpinorModel, subset=(), coef=1) -> "Spinor":
        return cls(model, {subset_mask(subset, model): coef})

    @property
    def coeffs(self) -> Mapping[int, Scalar]:
        return MappingProxyType(self._coeffs)

    def items(self):
        return sorted(self._coeffs.items(), key=lambda t: (_popcount(t[0]), _mask_key(t[0])))

    def __bool__(self):
        return bool(self._coeffs)

    def __eq__(self, other):
        if not isinstance(other, Spinor):
            return NotImplemented
        return self.model == other.model and self._coeffs == other._coeffs

    def __hash__(self):
        return hash((self.model, frozenset(self._coeffs.items())))

    def _check(self, other: "Spinor"):
        if not isinstance(other, Spinor):
            raise TypeError("expected Spinor")
        if other.model != self.model:
            raise SpinorError(f"spinor model mismatch: {self.model} vs {other.model}")

    def __add__(self, other: "Spinor") -> "Spinor":
        self._check(other)
        out = dict(self._coeffs)
        for k, v in other._coeffs.items():
            accumulate(out, k, v)
        return Spinor._make(self.model, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Spinor._make(self.model, {k: -v for k, v in self._coeffs.items()})

    def __mul__(self, c) -> "Spinor":
        if isinstance(c, Spinor):
            return NotImplemented
        c = Scalar.coerce(c)
        if not c:
            return Spinor._make(self.model, {})
        return Spinor._make(self.model, {k: v * c for k, v in self._coeffs.items()})

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self * (1 / Scalar.coerce(c))

    def conj(self) -> "Spinor":
        return Spinor._make(self.model, {k: v.conj() for k, v in self._coeffs.items()})

    @property
    def chirality(self):
        """+1 (even subsets), -1 (odd subsets), 0 if mixed or zero."""
        parities = {_popcount(m) & 1 for m in self._coeffs}
        if parities == {0}:
            return 1
        if parities == {1}:
            return -1
        return 0

    def real_vector(self) -> Dict[int, Fraction]:
        """Coordinates over R: ``2*mask`` for real parts, ``2*mask+1`` for imaginary."""
        out = {}
        for m, c in self._coeffs.items():
            if c.re:
                out[2 * m] = c.re
            if c.im:
                out[2 * m + 1] = c.im
        return out

    def __str__(self):
        return format_spinor(self)

    def __repr__(self):
        return f"Spinor[{self.model}]({format_spinor(self)})"


def subset_mask(subset, model: SpinorModel) -> int:
    mask = 0
    for i in subset:
        if not 1 <= i <= model.k:
            raise SpinorError(f"index {i} out of range 1..{model.k}")
        if mask >> (i - 1) & 1:
            raise SpinorError(f"repeated index {i}")
        mask |= 1 << (i - 1)
    return mask


def mask_indices(mask: int) -> Tuple[int, ...]:
    return tuple(i + 1 for i in range(mask.bit_length()) if mask >> i & 1)


def _mask_key(mask: int):
    return mask_indices(mask)


def format_spinor(eps: Spinor) -> str:
    items = eps.items()
    if not items:
        return "0"
    parts = []
    for n, (mask, c) in enumerate(items):
        name = "e" + "".join(str(i) for i in mask_indices(mask)) if mask else ""
        if c.is_real:
            neg = c.re < 0
            mag = -c.re if neg else c.re
            if name and mag == 1:
                body = name
            else:
                body = format_rational(mag) + ("*" + name if name else "")
            parts.append(("-" if neg else ("+" if n else "")) + body)
        else:
            if not c.re and abs(c.im) == 1:
                coef = format_scalar(c)  # "i" or "-i"
                body = coef + ("*" + name if name else "")
                parts.append(body if (n == 0 or body.startswith("-")) else "+" + body)
            else:
                body = "(" + format_scalar(c) + ")" + ("*" + name if name else "")
                parts.append(body if n == 0 else "+" + body)
    return "".join(parts)


# ---------------------------------------------------------------------------
# gamma matrices


def _create(i: int, mask: int):
    bit = 1 << (i - 1)
    if mask & bit:
        return 0, 0
    sign = -1 if _popcount(mask & (bit - 1)) & 1 else 1
    return sign, mask | bit


def _annihilate(i: int, mask: int):
    bit = 1 << (i - 1)
    if not mask & bit:
        return 0, 0
    sign = -1 if _popcount(mask & (bit - 1)) & 1 else 1
    return sign, mask ^ bit


@lru_cache(maxsize=None)
def _gamma_table(kind: str, A: int) -> Tuple[Tuple[Tuple[int, Scalar], ...], ...]:
    """``table[mask]`` lists ``(image mask, coefficient)`` for ``Gamma_A e_mask``."""
    model = SpinorModel(kind)
    k = model.k
    if kind == TEN_D:
        if A == 0:
            i, cre, cann = 5, -ONE, ONE
        elif A == 5:
            i, cre, cann = 5, ONE, ONE
        elif 1 <= A <= 4:
            i, cre, cann = A, ONE, ONE
        elif 6 <= A <= 9:
            i, cre, cann = A - 5, I, -I
        else:
            raise SpinorError(f"gamma index {A} out of range 0..9")
    else:
        if 1 <= A <= 4:
            i, cre, cann = A, ONE, ONE
        elif 5 <= A <= 8:
            i, cre, cann = A - 4, I, -I
        else:
            raise SpinorError(f"gamma index {A} out of range 1..8")
    rows = []
    for mask in range(1 << k):
        out = []
        s, m = _create(i, mask)
        if s:
            out.append((m, cre if s > 0 else -cre))
        s, m = _annihilate(i, mask)
        if s:
            out.append((m, cann if s > 0 else -cann))
        rows.append(tuple(out))
    return tuple(rows)


def gamma_apply(A: int, zeta: Spinor) -> Spinor:
    """Apply the orthonormal gamma matrix ``Gamma_A`` to ``zeta``."""
    if not isinstance(A, int) or A not in zeta.model.gamma_indices:
        raise SpinorError(f"gamma index {A!r} out of range for {zeta.model}")
    table = _gamma_table(zeta.model.kind, A)
    out: dict = {}
    for mask, c in zeta._coeffs.items():
        for m, g in table[mask]:
            accumulate(out, m, g * c)
    return Spinor._make(zeta.model, out)


def gamma_product(indices: Sequence[int], zeta: Spinor) -> Spinor:
    """``Gamma_{A1} Gamma_{A2} ... Gamma_{Ak} zeta`` (rightmost acts first)."""
    for A in reversed(tuple(indices)):
        zeta = gamma_apply(A, zeta)
    return zeta


# ---------------------------------------------------------------------------
# spin action


def spin_act(x, eps: Spinor) -> Spinor:
    """Infinitesimal spin action of an so(p,q) element on a spinor.

    ``x`` is an :class:`~holoforms.isotropy.AlgebraElement` (or any object
    with ``orthonormal_matrix(model)``) or a raw matrix ``X^A_B`` in the
    orthonormal gamma basis.  The action is ``1/4 sum (X eta^{-1})^{AB}
    Gamma_A Gamma_B``, normalised so that ``[sigma(X), Gamma(v)] =
    Gamma(X v)``.
    """
    model = eps.model
    X = x.orthonormal_matrix(model) if hasattr(x, "orthonormal_matrix") else x
    idx = list(model.gamma_indices)
    n = len(idx)
    if len(X) != n or any(len(r) != n for r in X):
        raise SpinorError(f"expected a {n}x{n} matrix for {model}")
    out = Spinor._make(model, {})
    for a in range(n):
        for b in range(a + 1, n):
            # (X eta^{-1})^{AB} antisymmetric; pair the (A,B) and (B,A) terms
            xab = Fraction(X[a][b]) * model.eta(idx[b])
            if not xab:
                continue
            term = gamma_product((idx[a], idx[b]), eps)
            out = out + term * (xab / 2)
    return out


def spin_matrix_check(X, model: SpinorModel) -> bool:
    """True iff ``X^T eta + eta X = 0``."""
    idx = list(model.gamma_indices)
    n = len(idx)
    for a in range(n):
        for b in range(n):
            if X[b][a] * model.eta(idx[b]) + model.eta(idx[a]) * X[a][b]:
                return False
    return True


# ---------------------------------------------------------------------------
# reality map and Dirac product


def reality_map(eps: Spinor) -> Spinor:
    out = gamma_product(eps.model.reality_indices, eps.conj())
    return out if REALITY_SIGN > 0 else -out


def is_majorana(eps: Spinor) -> bool:
    return reality_map(eps) == eps


def real_part(eps: Spinor) -> Spinor:
    return (eps + reality_map(eps)) * Fraction(1, 2)


def imag_part(eps: Spinor) -> Spinor:
    return (eps - reality_map(eps)) * Scalar(0, Fraction(-1, 2))


def hermitian(a: Spinor, b: Spinor) -> Scalar:
    a._check(b)
    total = ZERO
    small, big = (a._coeffs, b._coeffs)
    for m, x in small.items():
        y = big.get(m)
        if y is not None:
            total = total + x.conj() * y
    return total


def dirac(eps1: Spinor, eps2: Spinor) -> Scalar:
    """Spin-invariant inner product (antilinear in the first argument)."""
    eps1._check(eps2)
    if eps1.model.kind == TEN_D:
        val = hermitian(gamma_apply(0, eps1), eps2)
        return val if DIRAC_SIGN > 0 else -val
    return hermitian(eps1, eps2)


# ---------------------------------------------------------------------------
# bilinears and the model frame


@lru_cache(maxsize=None)
def model_coframe(kind: str) -> Tuple[Tuple[Tuple[int, Fraction], ...], ...]:
    """Rows ``theta^A = sum_a c * e^a`` expressing orthonormal coframe in the model frame.

    Indexed by position in ``gamma_indices``.
    """
    model = SpinorModel(kind)
    rows: List[Tuple[Tuple[int, Fraction], ...]] = []
    if kind == TEN_D:
        frame = model.frame
        half = Fraction(1, 2)
        # e^- = theta^5 - theta^0 and e^+ = (theta^5 + theta^0)/2, so
        # theta^0 = e^+ - e^-/2 and theta^5 = e^+ + e^-/2.
        for A in model.gamma_indices:
            if A == 0:
                rows.append(((0, -half), (1, Fraction(1))))
            elif A == 5:
                rows.append(((0, half), (1, Fraction(1))))
            elif A <= 4:
                rows.append(((frame.transverse_index(2 * A - 1), Fraction(1)),))
            else:
                rows.append(((frame.transverse_index(2 * (A - 5)), Fraction(1)),))
    else:
        for A in model.gamma_indices:
            if A <= 4:
                rows.append(((2 * A - 2, Fraction(1)),))
            else:
                rows.append(((2 * (A - 4) - 1, Fraction(1)),))
    return tuple(rows)


def orthonormal_to_model(model: SpinorModel, terms: Mapping[Tuple[int, ...], Scalar], degree: int) -> Form:
    """Re-express a form given on the orthonormal coframe in the model frame."""
    rows = model_coframe(model.kind)
    images = [{(a,): c for a, c in row} for row in rows]
    return Form._make(model.frame, degree, substitute_terms(terms, images))


def orthonormal_bilinear_terms(eps1: Spinor, eps2: Spinor, k: int) -> Dict[Tuple[int, ...], Scalar]:
    """Components ``<eps1, Gamma_{A1..Ak} eps2>`` on the orthonormal coframe.

    Keys are positions into ``model.gamma_indices`` (strictly increasing);
    the gamma matrices carry lower indices, so ``Gamma_A = eta_AA Gamma^A``
    and the form is ``sum omega_{A1..Ak} theta^{A1..Ak}`` with lowered
    components.
    """
    model = eps1.model
    idx = list(model.gamma_indices)
    out: dict = {}
    for pos in combinations(range(len(idx)), k):
        v = dirac(eps1, gamma_product([idx[p] for p in pos], eps2))
        if v:
            out[pos] = v
    return out


def bilinear(eps1: Spinor, eps2: Spinor, k: int) -> Form:
    """The k-form bilinear of two spinors, in the model frame."""
    eps1._check(eps2)
    model = eps1.model
    if not 0 <= k <= model.dim:
        raise SpinorError(f"bilinear degree {k} out of range 0..{model.dim}")
    return orthonormal_to_model(model, orthonormal_bilinear_terms(eps1, eps2, k), k)


def conventions() -> Dict[str, str]:
    return {
        "contraction_sign": "i_{e_j} e^{i1..ip} = (-1)^(k-1) e^{..^ik..} when j = ik",
        "reality_sign": f"{'+' if REALITY_SIGN > 0 else '-'}Gamma6789*conj (10d), "
        f"{'+' if REALITY_SIGN > 0 else '-'}Gamma5678*conj (8d)",
        "dirac_sign": f"<a,b> = {'+' if DIRAC_SIGN > 0 else '-'}h(Gamma0 a, b) (10d), h(a,b) (8d)",
        "lightcone_frame": "e^- = theta^5 - theta^0, e^+ = (theta^5 + theta^0)/2, "
        "e^{2a-1} = theta^a, e^{2a} = theta^{a+5}",
    }
