"""Frame-level tensors of the sigma-model symmetry algebra.

Conventions.  A (k)-form is stored by strict components, ``phi =
sum_{I strict} phi_I e^I``.  Coordinate expressions with free multi-indices,
like ``T_{mu L M} dx^{mu L M}``, are read as sums over *all* index values,
so a literal sum over a full antisymmetric tensor of rank k equals ``k!``
times the form.  Objects of the shape ``dx^mu (x) dx^K`` are stored as
:class:`CovectorForm`: for each ``mu`` a form of degree ``|K|``, normalised
by ``1/|K|!``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import factorial
from typing import Dict, Mapping, Optional, Tuple

from . import linalg
from .exterior import (
    FrameContext,
    FrameMismatch,
    Form,
    VectorForm,
    accumulate,
    merge_sign,
    wedge,
)
from .scalar import Scalar


class DegreeMismatch(ValueError):
    pass


def _same_frame(*objs) -> FrameContext:
    frame = objs[0].frame
    for o in objs[1:]:
        if o.frame != frame:
            raise FrameMismatch(f"{frame.describe()} vs {o.frame.describe()}")
    return frame


def contract_basis(phi: Form, nu: int) -> Form:
    """``i_{e_nu} phi`` (contraction into the first slot)."""
    out: dict = {}
    for I, v in phi.terms.items():
        for k, a in enumerate(I):
            if a == nu:
                out[I[:k] + I[k + 1:]] = -v if k & 1 else v
    return Form._make(phi.frame, max(phi.degree - 1, 0), out) if phi.degree else Form.zero(phi.frame, 0)


def lowered_basis(frame: FrameContext, mu: int) -> Form:
    """``g_{mu nu} e^nu``."""
    return Form(frame, 1, {(nu,): g for nu, g in frame.metric_partners(mu)})


def _split_first(J, k):
    """``(J[k], J without k, sign)`` so that ``e^J = sign e^{J[k]} ^ e^{rest}``."""
    return J[k], J[:k] + J[k + 1:], -1 if k & 1 else 1


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ContractionTensor:
    """``(L.M)_{mu L2, nu M2} = L_{rho mu L2} M^rho_{nu M2}``, keyed ``(mu, L2, nu, M2)``."""

    frame: FrameContext
    l: int
    m: int
    components: Mapping[Tuple, Scalar]

    def __getitem__(self, key) -> Scalar:
        return self.components.get(key, Scalar(0))

    def __bool__(self):
        return bool(self.components)

    def transpose(self) -> "ContractionTensor":
        """Swap the two index groups; ``dot(L, M).transpose() == dot(M, L)``."""
        return ContractionTensor(
            self.frame, self.m, self.l, {(nu, M2, mu, L2): v for (mu, L2, nu, M2), v in self.components.items()}
        )

    def is_metric(self) -> bool:
        """True when ``l == m == 1`` and the tensor equals ``g_{mu nu}``."""
        if self.l != 1 or self.m != 1:
            return False
        n = self.frame.dim
        want = {(a, (), b, ()): Scalar(self.frame.g(a, b)) for a in range(n) for b in range(n) if self.frame.g(a, b)}
        return dict(self.components) == want


def _first_slot_entries(L: VectorForm):
    """Yield ``(sigma, mu, L2, value)`` with ``value = L^sigma_{mu L2}``, L2 strict."""
    for (sigma, J), v in L.terms.items():
        for k in range(len(J)):
            mu, rest, s = _split_first(J, k)
            yield sigma, mu, rest, v if s > 0 else -v


def dot(L: VectorForm, M: VectorForm) -> ContractionTensor:
    frame = _same_frame(L, M)
    if L.lower_degree < 1 or M.lower_degree < 1:
        raise DegreeMismatch("dot needs vector forms of lower degree >= 1")
    # lower the upper index of L: L_{rho J} = g_{rho sigma} L^sigma_J
    Ml: Dict[int, list] = {}
    for rho, nu, M2, v in _first_slot_entries(M):
        Ml.setdefault(rho, []).append((nu, M2, v))
    out: dict = {}
    for sigma, mu, L2, v in _first_slot_entries(L):
        for rho, g in frame.metric_partners(sigma):
            for nu, M2, w in Ml.get(rho, ()):
                accumulate(out, (mu, L2, nu, M2), v * w * g)
    return ContractionTensor(frame, L.lower_degree, M.lower_degree, out)


# ---------------------------------------------------------------------------


class CovectorForm:
    """``sum_mu e^mu (x) N_mu`` with each ``N_mu`` a form of the same degree."""

    __slots__ = ("frame", "degree", "components")

    def __init__(self, frame: FrameContext, degree: int, components: Optional[Mapping[int, Form]] = None):
        self.frame = frame
        self.degree = degree
        comps = {}
        for mu, f in (components or {}).items():
            if f.frame != frame:
                raise FrameMismatch("component lives in another frame")
            if f and f.degree != degree:
                raise DegreeMismatch(f"component of degree {f.degree}, expected {degree}")
            if f:
                comps[mu] = f
        self.components = comps

    def __getitem__(self, mu) -> Form:
        return self.components.get(mu, Form.zero(self.frame, self.degree))

    def __bool__(self):
        return bool(self.components)

    def __eq__(self, other):
        if not isinstance(other, CovectorForm):
            return NotImplemented
        return self.frame == other.frame and self.components == other.components and (
            self.degree == other.degree or not self.components
        )

    def __add__(self, other: "CovectorForm") -> "CovectorForm":
        comps = dict(self.components)
        for mu, f in other.components.items():
            comps[mu] = comps[mu] + f if mu in comps else f
        return CovectorForm(self.frame, self.degree, comps)

    def __neg__(self):
        return CovectorForm(self.frame, self.degree, {mu: -f for mu, f in self.components.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        return CovectorForm(self.frame, self.degree, {mu: f * c for mu, f in self.components.items()})

    def antisymmetric_part(self) -> Form:
        """``(1/(p+1)) sum_mu e^mu ^ N_mu``: the totally antisymmetric projection."""
        acc = Form.zero(self.frame, self.degree + 1)
        for mu, f in self.components.items():
            acc = acc + wedge(Form(self.frame, 1, {(mu,): 1}), f)
        return acc * Fraction(1, self.degree + 1)

    @classmethod
    def from_form(cls, phi: Form) -> "CovectorForm":
        """A totally antisymmetric tensor viewed with its first index split off."""
        return cls(phi.frame, phi.degree - 1, {mu: contract_basis(phi, mu) for mu in range(phi.frame.dim)})

    def is_form(self) -> bool:
        """True when the tensor is totally antisymmetric, i.e. comes from a form."""
        return self == CovectorForm.from_form(self.antisymmetric_part() * (self.degree + 1))

    def __repr__(self):
        body = ", ".join(f"{mu}: {f}" for mu, f in sorted(self.components.items()))
        return f"CovectorForm({body})"


# ---------------------------------------------------------------------------
# Nijenhuis tensor in terms of the torsion


def _hll_term(L: VectorForm, M: VectorForm, H: Form) -> Form:
    """``sum_{nu rho} (i_rho i_nu H) ^ L^nu ^ M^rho`` (strict-form normalisation)."""
    frame = H.frame
    n = frame.dim
    Lc = {nu: L.upper_component(nu) for nu in range(n)}
    Mc = {rho: M.upper_component(rho) for rho in range(n)}
    acc = Form.zero(frame, 1 + L.lower_degree + M.lower_degree)
    for nu in range(n):
        if not Lc[nu]:
            continue
        iH = contract_basis(H, nu)
        if not iH:
            continue
        for rho in range(n):
            if not Mc[rho]:
                continue
            iiH = contract_basis(iH, rho)
            if not iiH:
                continue
            acc = acc + wedge(wedge(iiH, Lc[nu]), Mc[rho])
    return acc


def _raise_first(H: Form) -> Dict[int, Dict[Tuple[int, int], Scalar]]:
    """``H^rho_{ab}`` for ``a < b`` keyed by rho."""
    out: Dict[int, dict] = {}
    frame = H.frame
    for I, v in H.terms.items():
        for k in range(3):
            sig, rest, s = _split_first(I, k)
            for rho, g in frame.metric_partners(sig):
                accumulate(out.setdefault(rho, {}), rest, v * g if s > 0 else -(v * g))
    return out


def _wedge_indices(*parts):
    s, acc = 1, ()
    for p in parts:
        t, acc = merge_sign(acc, p)
        if not t:
            return 0, None
        s *= t
    return s, acc


@dataclass
class TorsionNijenhuis:
    N: CovectorForm
    nu: Form


def nijenhuis_torsion(L: VectorForm, M: VectorForm, H: Form, xi: Optional[Form] = None) -> TorsionNijenhuis:
    """Nijenhuis tensor of parallel L, M rewritten through the torsion 3-form H, and the form nu.

    ``N_{mu L M} = -(l+m+1) H_{[mu|nu rho|} L^nu_L M^rho_{M]}
    + (l m / 2) (H^rho_{lambda1 mu1} (L.M)_{mu L2, rho M2} + (mu <-> rho))``

    ``nu = -(l+m+1) [H_{nu rho mu} L^nu_L M^rho_M
    + (-1)^l (l m / 6) H_{mu mu1 mu2} xi_{L3 M}]`` (dx^{mu L M}),

    the xi term only when ``xi`` is given.  ``(mu <-> rho)`` is read as the
    symmetrisation of the first index pair of ``L.M``.
    """
    frame = _same_frame(L, M, H)
    if H.degree != 3:
        raise DegreeMismatch(f"H must be a 3-form, got degree {H.degree}")
    l, m = L.lower_degree, M.lower_degree
    p = l + m

    # totally antisymmetric part A with e^mu (x) i_mu A the first term of N
    A = _hll_term(L, M, H) * Fraction(factorial(l) * factorial(m), factorial(p + 1))
    first = CovectorForm.from_form(A * (-(p + 1)))

    comps: Dict[int, dict] = {}
    if l >= 1 and m >= 1 and H:
        D = dot(L, M)
        Hr = _raise_first(H)
        # group D by the index that meets H's upper index
        by_second: Dict[int, list] = {}
        by_first: Dict[int, list] = {}
        for (a, L2, b, M2), v in D.components.items():
            by_second.setdefault(b, []).append((a, L2, M2, v))
            by_first.setdefault(a, []).append((b, L2, M2, v))
        scale = Fraction(l * m, 2) * factorial(l - 1) * factorial(m - 1) / factorial(p)
        for rho, Hab in Hr.items():
            entries = [(mu, L2, M2, v) for mu, L2, M2, v in by_second.get(rho, ())]
            entries += [(mu, L2, M2, v) for mu, L2, M2, v in by_first.get(rho, ())]
            for mu, L2, M2, v in entries:
                for (a, b), h in Hab.items():
                    # H^rho_{lambda1 mu1} antisymmetric: both orders
                    for lam1, mu1, hs in ((a, b, h), (b, a, -h)):
                        s, K = _wedge_indices((lam1,), L2, (mu1,), M2)
                        if s:
                            c = v * hs * scale
                            accumulate(comps.setdefault(mu, {}), K, c if s > 0 else -c)
    second = CovectorForm(frame, p, {mu: Form._make(frame, p, t) for mu, t in comps.items() if t})
    N = first + second

    nu_form = A * (-(p + 1))
    if xi is not None and l * m:
        if xi.degree != p - 2:
            raise DegreeMismatch(f"xi must have degree {p - 2}, got {xi.degree}")
        coef = Fraction(-(p + 1) * l * m * factorial(p - 2), factorial(p + 1))
        if l % 2:
            coef = -coef
        nu_form = nu_form + wedge(H, xi) * coef
    return TorsionNijenhuis(N, nu_form)


def nu_tensor_oracle(L: VectorForm, M: VectorForm, H: Form, xi: Optional[Form] = None) -> Form:
    """nu by explicit antisymmetrisation over all index orderings (test oracle)."""
    from itertools import permutations, product

    frame = _same_frame(L, M, H)
    l, m = L.lower_degree, M.lower_degree
    p = l + m
    n = frame.dim

    def full_sign(idx):
        if len(set(idx)) < len(idx):
            return 0
        inv = sum(1 for a in range(len(idx)) for b in range(a + 1, len(idx)) if idx[a] > idx[b])
        return -1 if inv % 2 else 1

    def full(phi: Form, idx):
        # component of a form at an arbitrary index tuple
        if len(set(idx)) < len(idx):
            return Scalar(0)
        order = sorted(range(len(idx)), key=lambda k: idx[k])
        key = tuple(idx[k] for k in order)
        inv = sum(1 for a in range(len(order)) for b in range(a + 1, len(order)) if order[a] > order[b])
        v = phi.terms.get(key, Scalar(0))
        return -v if inv % 2 else v

    Lc = {a: L.upper_component(a) for a in range(n)}
    Mc = {a: M.upper_component(a) for a in range(n)}
    Hrows = {mu: [(a, b, full(H, (a, b, mu))) for a, b in product(range(n), repeat=2)] for mu in range(n)}
    memo = {}

    def contracted(mu, Lidx, Midx):
        # H_{a b mu} L^a_{Lidx} M^b_{Midx} on sorted sub-indices; the sign of
        # the sort is restored by full() on the sorted tuples being positive
        key = (mu, tuple(sorted(Lidx)), tuple(sorted(Midx)))
        if key not in memo:
            t = Scalar(0)
            for a, b, h in Hrows[mu]:
                if h:
                    t = t + h * full(Lc[a], key[1]) * full(Mc[b], key[2])
            memo[key] = t
        return memo[key] * (full_sign(Lidx) * full_sign(Midx))

    out = {}
    signed_perms = [(perm, full_sign(perm)) for perm in permutations(range(p + 1))]
    for I in combinations(range(n), p + 1):
        total = Scalar(0)
        for perm, sgn in signed_perms:
            idx = [I[k] for k in perm]
            mu, Lidx, Midx = idx[0], idx[1:1 + l], idx[1 + l:]
            t = contracted(mu, Lidx, Midx)
            if xi is not None and l * m:
                x = full(H, idx[:3]) * full(xi, idx[3:])
                x = x * Fraction(l * m, 6)
                t = t - x if l % 2 else t + x
            total = total + (t if sgn > 0 else -t)
        # literal sum over orderings equals (p+1)! times the strict component
        total = total * Fraction(-(p + 1), factorial(p + 1))
        if total:
            out[I] = total
    return Form(frame, p + 1, out)


# ---------------------------------------------------------------------------
# decomposition of L.M


@dataclass
class Decomposition:
    sigma: Form
    xi: Form


def _cov_from_dot(D: ContractionTensor, swap: bool) -> Dict[int, dict]:
    """``(l-1)!(m-1)! sum D_{mu L2, nu M2} e^{L2} ^ e^nu ^ e^{M2}`` (or ``e^nu ^ e^{L2} ^ e^{M2}``
    with the index roles of ``D_{nu L2, mu M2}`` when ``swap``), keyed by mu."""
    scale = factorial(D.l - 1) * factorial(D.m - 1)
    out: Dict[int, dict] = {}
    for (a, L2, b, M2), v in D.components.items():
        if swap:
            mu, s, K = b, *_wedge_indices((a,), L2, M2)
        else:
            mu, s, K = a, *_wedge_indices(L2, (b,), M2)
        if s:
            accumulate(out.setdefault(mu, {}), K, v * scale if s > 0 else -(v * scale))
    return out


def _sym_from_dot(D: ContractionTensor) -> Dict[Tuple[int, int], dict]:
    """``(l-1)!(m-1)! (D_{mu L2, nu M2} + D_{nu L2, mu M2}) e^{L2} ^ e^{M2}`` keyed by (mu, nu)."""
    scale = factorial(D.l - 1) * factorial(D.m - 1)
    out: Dict[Tuple[int, int], dict] = {}
    for (a, L2, b, M2), v in D.components.items():
        s, K = merge_sign(L2, M2)
        if not s:
            continue
        c = v * scale if s > 0 else -(v * scale)
        accumulate(out.setdefault((a, b), {}), K, c)
        accumulate(out.setdefault((b, a), {}), K, c)
    return out


def conconx_equations(L: VectorForm, M: VectorForm):
    """The linear system for ``(sigma, xi)``.

    Returns ``(rows, rhs, sigma_keys, xi_keys)`` where the unknown vector is
    the strict components of sigma followed by those of xi.
    """
    frame = _same_frame(L, M)
    l, m = L.lower_degree, M.lower_degree
    if l < 1 or m < 1:
        raise DegreeMismatch("the decomposition needs l, m >= 1")
    p = l + m
    n = frame.dim
    D = dot(L, M)
    sigma_keys = list(combinations(range(n), p))
    xi_keys = list(combinations(range(n), p - 2))
    ns = len(sigma_keys)

    # right-hand sides as linear functions of the unknowns:
    # equation key -> {unknown column: coefficient}
    eqs: Dict[tuple, Dict[int, Fraction]] = {}

    def add(key, col, v):
        if v:
            row = eqs.setdefault(key, {})
            row[col] = row.get(col, 0) + v
            if not row[col]:
                del row[col]

    # components are matched index by index, so moving nu past L2 in the
    # first condition costs (-1)^(l-1)
    flip = (-1) ** (l - 1)
    c_sigma1 = Fraction((-1) ** (l + 1) * factorial(p - 1)) * flip
    c_sigma2 = Fraction((-1) ** l * factorial(p - 1))
    c_xi1 = Fraction(m, 2) * factorial(p - 2) * flip
    c_xi2 = Fraction(l, 2) * factorial(p - 2)
    lowered = {mu: lowered_basis(frame, mu) for mu in range(n)}
    for col, I in enumerate(sigma_keys):
        unit = Form(frame, p, {I: 1})
        for mu in I:
            for K, v in contract_basis(unit, mu).terms.items():
                add(("1", mu, K), col, c_sigma1 * v.re)
                add(("2", mu, K), col, c_sigma2 * v.re)
    c3 = Fraction(-(p - 2), 2) * (factorial(p - 3) if p >= 3 else 0)
    for u, J in enumerate(xi_keys):
        col = ns + u
        unit = Form(frame, p - 2, {J: 1})
        for mu in range(n):
            for K, v in wedge(lowered[mu], unit).terms.items():
                add(("1", mu, K), col, c_xi1 * v.re)
                add(("2", mu, K), col, c_xi2 * v.re)
            for nu, g in frame.metric_partners(mu):
                add(("3", mu, nu, J), col, factorial(p - 2) * g)
        if c3:
            for mu in range(n):
                for nu in range(n):
                    t = wedge(lowered[mu], contract_basis(unit, nu)) + wedge(lowered[nu], contract_basis(unit, mu))
                    for K, v in t.terms.items():
                        add(("3", mu, nu, K), col, c3 * v.re)

    lhs: Dict[tuple, Scalar] = {}
    for mu, terms in _cov_from_dot(D, False).items():
        for K, v in terms.items():
            lhs[("1", mu, K)] = v
    for mu, terms in _cov_from_dot(D, True).items():
        for K, v in terms.items():
            lhs[("2", mu, K)] = v
    for (mu, nu), terms in _sym_from_dot(D).items():
        for K, v in terms.items():
            lhs[("3", mu, nu, K)] = v

    keys = sorted(set(eqs) | set(lhs), key=repr)
    rows = [eqs.get(k, {}) for k in keys]
    rhs = [lhs.get(k, Scalar(0)) for k in keys]
    return rows, rhs, sigma_keys, xi_keys, keys


def conconx_decompose(L: VectorForm, M: VectorForm) -> Optional[Decomposition]:
    """Exact ``(sigma, xi)`` solving the three linear conditions on ``L.M``, or None."""
    frame = _same_frame(L, M)
    rows, rhs, sigma_keys, xi_keys, _ = conconx_equations(L, M)
    if any(not v.is_real for v in rhs):
        rhs_f = rhs
    else:
        rhs_f = [v.re for v in rhs]
    sol = linalg.solve(rows, rhs_f, len(sigma_keys) + len(xi_keys))
    if sol is None:
        return None
    ns = len(sigma_keys)
    sigma = Form(frame, L.lower_degree + M.lower_degree, {sigma_keys[c]: v for c, v in sol.items() if c < ns})
    xi = Form(frame, L.lower_degree + M.lower_degree - 2, {xi_keys[c - ns]: v for c, v in sol.items() if c >= ns})
    return Decomposition(sigma, xi)
