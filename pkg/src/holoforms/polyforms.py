"""Forms and vector-valued forms with polynomial coefficients on a flat chart.

The chart is R^n with coordinates x^1..x^n (stored 0-based).  Coefficients
are exact rational polynomials, so d, the derivations i_L and d_L, and the
Nijenhuis tensor can be compared as polynomial identities.

Storage follows :mod:`holoforms.exterior`: one coefficient per strictly
increasing multi-index, and ``i_L phi = sum L^mu_J phi_{mu K} e^J ^ e^K``.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterable, Mapping, Optional, Tuple

from .exterior import accumulate, group_by_upper, inner_terms, merge_sign, wedge_terms

Exponent = Tuple[int, ...]


class PolyCoef:
    """Sparse polynomial: exponent vector -> Fraction, no zero coefficients."""

    __slots__ = ("n", "_c", "_hash")

    def __init__(self, n: int, coeffs: Optional[Mapping[Exponent, object]] = None):
        self.n = n
        c = {}
        for e, v in (coeffs or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != n or any(x < 0 for x in e):
                raise ValueError(f"bad exponent vector {e} for {n} variables")
            v = Fraction(v)
            if v:
                c[e] = c.get(e, 0) + v
                if not c[e]:
                    del c[e]
        self._c = c
        self._hash = None

    @classmethod
    def _raw(cls, n, c):
        p = cls.__new__(cls)
        p.n, p._c, p._hash = n, c, None
        return p

    @classmethod
    def constant(cls, n: int, value) -> "PolyCoef":
        return cls(n, {(0,) * n: value})

    @classmethod
    def variable(cls, n: int, i: int) -> "PolyCoef":
        e = [0] * n
        e[i] = 1
        return cls(n, {tuple(e): 1})

    @property
    def coeffs(self) -> Dict[Exponent, Fraction]:
        return dict(self._c)

    @property
    def total_degree(self) -> int:
        return max((sum(e) for e in self._c), default=-1)

    def _coerce(self, other) -> "PolyCoef":
        if isinstance(other, PolyCoef):
            if other.n != self.n:
                raise ValueError("polynomials over different charts")
            return other
        return PolyCoef.constant(self.n, other)

    def __bool__(self):
        return bool(self._c)

    def __eq__(self, other):
        if isinstance(other, PolyCoef):
            return self.n == other.n and self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self._c == ({(0,) * self.n: Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self._c.items())))
        return self._hash

    def __add__(self, other):
        other = self._coerce(other)
        c = dict(self._c)
        for e, v in other._c.items():
            accumulate(c, e, v)
        return PolyCoef._raw(self.n, c)

    __radd__ = __add__

    def __neg__(self):
        return PolyCoef._raw(self.n, {e: -v for e, v in self._c.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return PolyCoef._raw(self.n, {})
            return PolyCoef._raw(self.n, {e: v * other for e, v in self._c.items()})
        other = self._coerce(other)
        c: Dict[Exponent, Fraction] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                accumulate(c, tuple(a + b for a, b in zip(e1, e2)), v1 * v2)
        return PolyCoef._raw(self.n, c)

    __rmul__ = __mul__

    def partial(self, i: int) -> "PolyCoef":
        c = {}
        for e, v in self._c.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                c[tuple(f)] = v * e[i]
        return PolyCoef._raw(self.n, c)

    def evaluate(self, point) -> Fraction:
        total = Fraction(0)
        for e, v in self._c.items():
            term = v
            for x, k in zip(point, e):
                if k:
                    term *= Fraction(x) ** k
            total += term
        return total

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for e, v in sorted(self._c.items(), reverse=True):
            mono = "*".join(f"x{i + 1}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k)
            if not mono:
                parts.append(str(v))
            elif v == 1:
                parts.append(mono)
            elif v == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{v}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__


def _clean(terms: Mapping, n: int) -> dict:
    out = {}
    for k, v in terms.items():
        if not isinstance(v, PolyCoef):
            v = PolyCoef.constant(n, v)
        elif v.n != n:
            raise ValueError("coefficient lives on a different chart")
        if v:
            out[k] = v
    return out


class PolyForm:
    """A p-form on R^n with polynomial coefficients."""

    __slots__ = ("n", "degree", "terms")

    def __init__(self, n: int, degree: int, terms: Optional[Mapping] = None):
        self.n = n
        self.degree = degree
        clean = {}
        for I, v in _clean(terms or {}, n).items():
            I = tuple(I)
            if len(I) != degree or any(b <= a for a, b in zip(I, I[1:])) or any(not 0 <= a < n for a in I):
                raise ValueError(f"bad multi-index {I} for a {degree}-form on R^{n}")
            clean[I] = v
        self.terms = clean

    @classmethod
    def _make(cls, n, degree, terms):
        f = cls.__new__(cls)
        f.n, f.degree, f.terms = n, degree, terms
        return f

    @classmethod
    def zero(cls, n: int, degree: int) -> "PolyForm":
        return cls._make(n, degree, {})

    @classmethod
    def coordinate(cls, n: int, i: int) -> "PolyForm":
        """The 0-form x^{i+1}."""
        return cls._make(n, 0, {(): PolyCoef.variable(n, i)})

    @classmethod
    def basis(cls, n: int, indices, coef=1) -> "PolyForm":
        return cls(n, len(indices), {tuple(indices): coef})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, PolyForm):
            return NotImplemented
        if not self.terms and not other.terms:
            return self.n == other.n
        return (self.n, self.degree, self.terms) == (other.n, other.degree, other.terms)

    def __hash__(self):
        # zero forms compare equal across degrees, so they must hash alike
        if not self.terms:
            return hash((self.n, "zero"))
        return hash((self.n, self.degree, frozenset(self.terms.items())))

    def _check(self, other):
        if self.n != other.n:
            raise ValueError("forms live on different charts")
        if self.degree != other.degree and self.terms and other.terms:
            raise ValueError(f"cannot add a {self.degree}-form and a {other.degree}-form")

    def __add__(self, other: "PolyForm") -> "PolyForm":
        self._check(other)
        out = dict(self.terms)
        for I, v in other.terms.items():
            accumulate(out, I, v)
        deg = self.degree if self.terms else other.degree
        return PolyForm._make(self.n, deg, out)

    def __neg__(self):
        return PolyForm._make(self.n, self.degree, {I: -v for I, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        if isinstance(c, (PolyCoef, int, Fraction)):
            return PolyForm._make(self.n, self.degree, {I: v * c for I, v in self.terms.items() if v * c})
        return NotImplemented

    __rmul__ = __mul__

    def wedge(self, other: "PolyForm") -> "PolyForm":
        if self.n != other.n:
            raise ValueError("forms live on different charts")
        return PolyForm._make(self.n, self.degree + other.degree, wedge_terms(self.terms, other.terms))

    __xor__ = wedge

    def map_coefficients(self, fn) -> "PolyForm":
        out = {}
        for I, v in self.terms.items():
            w = fn(v)
            if w:
                out[I] = w
        return PolyForm._make(self.n, self.degree, out)

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({v}) dx{''.join(str(a + 1) for a in I)}" for I, v in sorted(self.terms.items()))

    __repr__ = __str__


class PolyVectorForm:
    """A vector-valued l-form ``sum L^mu_J d_mu (x) dx^J`` with polynomial coefficients."""

    __slots__ = ("n", "lower_degree", "terms")

    def __init__(self, n: int, lower_degree: int, terms: Optional[Mapping] = None):
        self.n = n
        self.lower_degree = lower_degree
        clean = {}
        for key, v in _clean(terms or {}, n).items():
            mu, J = key
            J = tuple(J)
            if not 0 <= mu < n or len(J) != lower_degree or any(b <= a for a, b in zip(J, J[1:])):
                raise ValueError(f"bad key {key} for a vector {lower_degree}-form on R^{n}")
            clean[(mu, J)] = v
        self.terms = clean

    @classmethod
    def _make(cls, n, lower_degree, terms):
        f = cls.__new__(cls)
        f.n, f.lower_degree, f.terms = n, lower_degree, terms
        return f

    @classmethod
    def identity(cls, n: int) -> "PolyVectorForm":
        return cls(n, 1, {(a, (a,)): 1 for a in range(n)})

    @classmethod
    def vector_field(cls, n: int, components) -> "PolyVectorForm":
        return cls(n, 0, {(a, ()): c for a, c in enumerate(components)})

    @classmethod
    def from_components(cls, forms: Mapping[int, PolyForm]) -> "PolyVectorForm":
        forms = dict(forms)
        n = next(iter(forms.values())).n
        deg = next(iter(forms.values())).degree
        terms = {}
        for mu, f in forms.items():
            for J, v in f.terms.items():
                terms[(mu, J)] = v
        return cls._make(n, deg, terms)

    def component(self, mu: int) -> PolyForm:
        return PolyForm._make(self.n, self.lower_degree, {J: v for (m, J), v in self.terms.items() if m == mu})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, PolyVectorForm):
            return NotImplemented
        if not self.terms and not other.terms:
            return self.n == other.n
        return (self.n, self.lower_degree, self.terms) == (other.n, other.lower_degree, other.terms)

    def __hash__(self):
        if not self.terms:
            return hash((self.n, "zero"))
        return hash((self.n, self.lower_degree, frozenset(self.terms.items())))

    def __add__(self, other):
        if self.n != other.n:
            raise ValueError("vector forms live on different charts")
        if self.lower_degree != other.lower_degree and self.terms and other.terms:
            raise ValueError("cannot add vector forms of different degree")
        out = dict(self.terms)
        for k, v in other.terms.items():
            accumulate(out, k, v)
        deg = self.lower_degree if self.terms else other.lower_degree
        return PolyVectorForm._make(self.n, deg, out)

    def __neg__(self):
        return PolyVectorForm._make(self.n, self.lower_degree, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        if isinstance(c, (PolyCoef, int, Fraction)):
            return PolyVectorForm._make(self.n, self.lower_degree, {k: v * c for k, v in self.terms.items() if v * c})
        return NotImplemented

    __rmul__ = __mul__

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(
            f"({v}) d{mu + 1}(x)dx{''.join(str(a + 1) for a in J)}" for (mu, J), v in sorted(self.terms.items())
        )

    __repr__ = __str__


# ---------------------------------------------------------------------------
# derivations


def d(phi: PolyForm) -> PolyForm:
    """Exterior derivative ``sum_i dx^i ^ d_i phi``."""
    out: dict = {}
    for I, v in phi.terms.items():
        for i in range(phi.n):
            dv = v.partial(i)
            if not dv:
                continue
            s, K = merge_sign((i,), I)
            if s:
                accumulate(out, K, dv if s > 0 else -dv)
    return PolyForm._make(phi.n, phi.degree + 1, out)


def _require_chart(*objs):
    n = objs[0].n
    for o in objs[1:]:
        if o.n != n:
            raise ValueError("objects live on different charts")
    return n


def inner(L: PolyVectorForm, phi: PolyForm) -> PolyForm:
    _require_chart(L, phi)
    if phi.degree == 0:
        return PolyForm.zero(phi.n, L.lower_degree - 1)
    return PolyForm._make(phi.n, phi.degree + L.lower_degree - 1, inner_terms(L.terms, phi.terms))


def d_L(L: PolyVectorForm, phi: PolyForm) -> PolyForm:
    """``i_L d phi + (-1)^l d i_L phi``."""
    first = inner(L, d(phi))
    if phi.degree == 0:
        # i_L of a 0-form vanishes
        return first
    second = d(inner(L, phi))
    return first - second if L.lower_degree % 2 else first + second


def vbarwedge(L: PolyVectorForm, M: PolyVectorForm) -> PolyVectorForm:
    """``(L barwedge M)^rho = i_L (M^rho)``; lower degree ``l + m - 1``."""
    n = _require_chart(L, M)
    by_mu = group_by_upper(L.terms)
    out = {}
    for rho in range(n):
        comp = {J: v for (r, J), v in M.terms.items() if r == rho}
        if not comp or M.lower_degree == 0:
            continue
        for K, v in inner_terms(L.terms, comp, by_mu).items():
            out[(rho, K)] = v
    return PolyVectorForm._make(n, L.lower_degree + M.lower_degree - 1, out)


def _partial_form(phi: PolyForm, i: int) -> PolyForm:
    return phi.map_coefficients(lambda v: v.partial(i))


def _contract_first(phi: PolyForm, nu: int) -> PolyForm:
    """``i_{d_nu} phi``: contraction of a coordinate vector into the first slot."""
    out = {}
    for I, v in phi.terms.items():
        for k, a in enumerate(I):
            if a == nu:
                out[I[:k] + I[k + 1:]] = -v if k & 1 else v
    return PolyForm._make(phi.n, phi.degree - 1, out)


def nijenhuis(L: PolyVectorForm, M: PolyVectorForm) -> PolyVectorForm:
    """Nijenhuis tensor of two vector-valued forms.

    Component form of the four-term coordinate expression::

        N^mu = L^nu ^ d_nu M^mu - d_nu L^mu ^ M^nu
               - (-1)^(l-1) i_nu L^mu ^ d M^nu + (-1)^l d L^nu ^ i_nu M^mu

    with ``L^nu`` the l-form with upper index nu.  For vector fields this is
    the Lie bracket; in general ``[d_L, d_M] = d_{N(L, M)}``.
    """
    n = _require_chart(L, M)
    l, m = L.lower_degree, M.lower_degree
    Lc = {mu: L.component(mu) for mu in range(n)}
    Mc = {mu: M.component(mu) for mu in range(n)}
    comps = {}
    for mu in range(n):
        acc = PolyForm.zero(n, l + m)
        for nu in range(n):
            if Lc[nu]:
                acc = acc + Lc[nu].wedge(_partial_form(Mc[mu], nu))
            if Mc[nu]:
                acc = acc - _partial_form(Lc[mu], nu).wedge(Mc[nu])
            if l and Lc[mu] and Mc[nu]:
                t = _contract_first(Lc[mu], nu).wedge(d(Mc[nu]))
                acc = acc + t if l % 2 == 0 else acc - t
            if m and Mc[mu] and Lc[nu]:
                t = d(Lc[nu]).wedge(_contract_first(Mc[mu], nu))
                acc = acc - t if l % 2 else acc + t
        comps[mu] = acc
    terms = {}
    for mu, f in comps.items():
        for J, v in f.terms.items():
            terms[(mu, J)] = v
    return PolyVectorForm._make(n, l + m, terms)


def lie_derivative(X: PolyVectorForm, phi: PolyForm) -> PolyForm:
    """Coordinate formula ``X^j d_j phi + sum_j dX^j ^ i_{d_j} phi``."""
    if X.lower_degree != 0:
        raise ValueError("Lie derivative needs a vector field")
    n = _require_chart(X, phi)
    res = PolyForm.zero(n, phi.degree)
    for (j, _), xj in X.terms.items():
        res = res + _partial_form(phi, j) * xj
        if phi.degree:
            dx = d(PolyForm._make(n, 0, {(): xj}))
            res = res + dx.wedge(_contract_first(phi, j))
    return res


def lie_derivative_flow(X: Iterable, phi: PolyForm) -> PolyForm:
    """Lie derivative along a constant vector via the flow ``x -> x + tX``.

    Substitutes ``x^i + t X^i`` into every coefficient and keeps the part
    linear in ``t``; for constant X the pull-back of dx^i is dx^i.
    """
    X = [Fraction(c) for c in X]
    n = phi.n
    out = {}
    for I, v in phi.terms.items():
        acc: Dict[Exponent, Fraction] = {}
        for e, c in v.coeffs.items():
            # d/dt prod (x_i + t X_i)^{e_i} at t=0
            for i, k in enumerate(e):
                if k and X[i]:
                    f = list(e)
                    f[i] -= 1
                    accumulate(acc, tuple(f), c * k * X[i])
        if acc:
            out[I] = PolyCoef._raw(n, acc)
    return PolyForm._make(n, phi.degree, out)


# ---------------------------------------------------------------------------
# graded commutators and the derivation identities


def _commutator(A, B, degA: int, degB: int, phi: PolyForm) -> PolyForm:
    ab = A(B(phi))
    ba = B(A(phi))
    return ab - ba if (degA * degB) % 2 == 0 else ab + ba


def _same(a: PolyForm, b: PolyForm) -> bool:
    if not a.terms and not b.terms:
        return True
    return a.degree == b.degree and a.terms == b.terms


def random_poly(rng: random.Random, n: int, max_degree: int = 2, terms: int = 3, cmax: int = 3) -> PolyCoef:
    c = {}
    for _ in range(terms):
        e = [0] * n
        for _ in range(rng.randint(0, max_degree)):
            e[rng.randrange(n)] += 1
        v = rng.randint(-cmax, cmax)
        if v:
            c[tuple(e)] = c.get(tuple(e), 0) + Fraction(v)
    return PolyCoef(n, c)


def random_poly_form(rng: random.Random, n: int, degree: int, max_degree: int = 2, density: float = 0.6) -> PolyForm:
    terms = {}
    for I in combinations(range(n), degree):
        if rng.random() < density:
            p = random_poly(rng, n, max_degree)
            if p:
                terms[I] = p
    return PolyForm(n, degree, terms)


def random_poly_vector_form(rng: random.Random, n: int, lower_degree: int, max_degree: int = 2, density: float = 0.4) -> PolyVectorForm:
    terms = {}
    for mu in range(n):
        for J in combinations(range(n), lower_degree):
            if rng.random() < density:
                p = random_poly(rng, n, max_degree)
                if p:
                    terms[(mu, J)] = p
    return PolyVectorForm(n, lower_degree, terms)


def exincom_residuals(L: PolyVectorForm, M: PolyVectorForm, phi: PolyForm) -> Dict[str, PolyForm]:
    """Left minus right side of the three commutator identities applied to ``phi``."""
    l, m = L.lower_degree, M.lower_degree
    N = nijenhuis(L, M)
    dl = lambda f: d_L(L, f)
    dm = lambda f: d_L(M, f)
    il = lambda f: inner(L, f)
    im = lambda f: inner(M, f)

    lhs1 = _commutator(dl, dm, l, m, phi)
    rhs1 = d_L(N, phi)

    lhs2 = _commutator(il, dm, l - 1, m, phi)
    rhs2 = d_L(vbarwedge(L, M), phi)
    iN = inner(N, phi)
    rhs2 = rhs2 - iN if m % 2 else rhs2 + iN

    lhs3 = _commutator(il, im, l - 1, m - 1, phi)
    rhs3 = inner(vbarwedge(L, M), phi)
    t = inner(vbarwedge(M, L), phi)
    rhs3 = rhs3 - t if (l + m + m * l) % 2 else rhs3 + t

    return {"dd": lhs1 - rhs1, "id": lhs2 - rhs2, "ii": lhs3 - rhs3}


IDENTITIES = ("dd", "id", "ii")


def verify_exincom(seed: int = 0, trials: int = 100, dims=(2, 3, 4), degrees=(0, 1, 2), max_poly_degree: int = 2) -> dict:
    """Check the three derivation commutator identities on random polynomial data.

    Each trial draws a chart dimension, vector-form degrees l, m, and a
    probe form; the report lists per-identity pass counts and the first
    counterexample, if any.
    """
    rng = random.Random(seed)
    passed = {k: 0 for k in IDENTITIES}
    failures = []
    for t in range(trials):
        n = rng.choice(list(dims))
        l = rng.choice(list(degrees))
        m = rng.choice(list(degrees))
        p = rng.randint(0, n)
        L = random_poly_vector_form(rng, n, l, max_poly_degree)
        M = random_poly_vector_form(rng, n, m, max_poly_degree)
        phi = random_poly_form(rng, n, p, max_poly_degree)
        res = exincom_residuals(L, M, phi)
        for k in IDENTITIES:
            if res[k]:
                if len(failures) < 5:
                    failures.append(
                        {"trial": t, "identity": k, "dim": n, "l": l, "m": m, "p": p, "L": str(L), "M": str(M), "phi": str(phi), "residual": str(res[k])}
                    )
            else:
                passed[k] += 1
    return {
        "seed": seed,
        "trials": trials,
        "passed": passed,
        "failures": failures,
        "pass": all(v == trials for v in passed.values()),
    }
