"""Dense brute-force exterior algebra used as an oracle for the sparse kernels.

Forms are stored as full antisymmetric numpy object arrays of Fractions.
Products are evaluated from their definitions by summing over all
permutations of the output slots, with no sign bookkeeping shared with
:mod:`holoforms.exterior`.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations, permutations, product
from math import factorial

import numpy as np

from .exterior import FrameContext, Form, VectorForm
from .scalar import Scalar


def _sign(perm) -> int:
    s = 1
    p = list(perm)
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                s = -s
    return s


def _zeros(n: int, k: int):
    arr = np.empty((n,) * k, dtype=object)
    arr[...] = Fraction(0)
    return arr


def to_dense(phi: Form):
    """Full antisymmetric component array of ``phi`` (real or complex Scalars kept as-is)."""
    n, k = phi.frame.dim, phi.degree
    arr = _zeros(n, k)
    for I, c in phi.terms.items():
        for perm in permutations(range(k)):
            arr[tuple(I[p] for p in perm)] = c * _sign(perm) if k else c
    return arr


def from_dense(arr, frame: FrameContext, k: int) -> Form:
    terms = {}
    for I in combinations(range(frame.dim), k):
        v = arr[I] if k else arr[()]
        if v:
            terms[I] = v
    return Form(frame, k, terms)


def vector_to_dense(L: VectorForm):
    """Array ``A[mu, J...]`` of the vector-valued form ``L``."""
    n, l = L.frame.dim, L.lower_degree
    arr = _zeros(n, l + 1)
    for (mu, J), c in L.terms.items():
        for perm in permutations(range(l)):
            arr[(mu,) + tuple(J[p] for p in perm)] = c * _sign(perm) if l else c
    return arr


def _alt(n: int, p: int, q: int, value):
    """Antisymmetrise ``value(first p slots, last q slots)`` over all slot permutations."""
    k = p + q
    out = _zeros(n, k)
    norm = Fraction(1, factorial(p) * factorial(q))
    for I in combinations(range(n), k):
        total = Fraction(0)
        for perm in permutations(range(k)):
            idx = tuple(I[t] for t in perm)
            v = value(idx[:p], idx[p:])
            if v:
                total = total + v * _sign(perm)
        if total:
            total = total * norm
            for perm in permutations(range(k)):
                out[tuple(I[t] for t in perm)] = total * _sign(perm)
    return out


def dense_wedge(a: Form, b: Form) -> Form:
    A, B = to_dense(a), to_dense(b)
    n, p, q = a.frame.dim, a.degree, b.degree
    arr = _alt(n, p, q, lambda x, y: A[x] * B[y])
    return from_dense(arr, a.frame, p + q)


def dense_inner(L: VectorForm, phi: Form) -> Form:
    """``i_L phi = sum_mu L^mu_J phi_{mu K} e^J ^ e^K`` over strict J, K."""
    n, l, k = phi.frame.dim, L.lower_degree, phi.degree
    A, P = vector_to_dense(L), to_dense(phi)

    def value(J, K):
        return sum((A[(mu,) + J] * P[(mu,) + K] for mu in range(n)), Fraction(0))

    arr = _alt(n, l, k - 1, value)
    return from_dense(arr, phi.frame, l + k - 1)


def dense_raise(lam: Form) -> VectorForm:
    """``g^{mu nu} lam_{nu J}`` from the full metric matrix."""
    frame = lam.frame
    n, k = frame.dim, lam.degree
    G = np.array([[frame.g(a, b) for b in range(n)] for a in range(n)], dtype=object)
    arr = to_dense(lam)
    terms = {}
    for mu in range(n):
        for J in combinations(range(n), k - 1):
            v = sum((G[mu, nu] * arr[(nu,) + J] for nu in range(n)), Fraction(0))
            if v:
                terms[(mu, J)] = v
    return VectorForm(frame, k - 1, terms)


def dense_barwedge(lam: Form, chi: Form) -> Form:
    return dense_inner(dense_raise(lam), chi)


# ---------------------------------------------------------------------------
# random instances


def random_form(rng: random.Random, frame: FrameContext, k: int, density: float = 0.5, complex_ok: bool = True) -> Form:
    terms = {}
    for I in combinations(range(frame.dim), k):
        if rng.random() < density:
            re = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
            im = Fraction(rng.randint(-2, 2)) if complex_ok and rng.random() < 0.2 else Fraction(0)
            terms[I] = Scalar(re, im)
    return Form(frame, k, terms)


def random_vector_form(rng: random.Random, frame: FrameContext, l: int, density: float = 0.4) -> VectorForm:
    terms = {}
    for mu, J in product(range(frame.dim), combinations(range(frame.dim), l)):
        if rng.random() < density:
            terms[(mu, J)] = Fraction(rng.randint(-3, 3), rng.randint(1, 2))
    return VectorForm(frame, l, terms)


def random_frame(rng: random.Random, max_dim: int = 6) -> FrameContext:
    n = rng.randint(2, max_dim)
    return FrameContext.lightcone(n) if rng.random() < 0.5 else FrameContext.euclidean(n)


def compare_once(rng: random.Random, max_dim: int = 6) -> dict:
    """One random instance of wedge, inner and barwedge, sparse vs dense."""
    from .exterior import barwedge, inner, wedge

    frame = random_frame(rng, max_dim)
    n = frame.dim
    p = rng.randint(0, min(3, n))
    q = rng.randint(0, min(3, n - p))
    a, b = random_form(rng, frame, p), random_form(rng, frame, q)
    l = rng.randint(0, min(2, n))
    k = rng.randint(1, min(3, n))
    L, phi = random_vector_form(rng, frame, l), random_form(rng, frame, k)
    r = rng.randint(1, min(3, n))
    s = rng.randint(1, min(3, n))
    lam, chi = random_form(rng, frame, r), random_form(rng, frame, s)
    return {
        "frame": frame.describe(),
        "wedge": wedge(a, b) == dense_wedge(a, b),
        "inner": inner(L, phi) == dense_inner(L, phi),
        "barwedge": barwedge(lam, chi) == dense_barwedge(lam, chi),
    }


def oracle_report(seed: int = 0, trials: int = 1000, max_dim: int = 6) -> dict:
    rng = random.Random(seed)
    passed = {"wedge": 0, "inner": 0, "barwedge": 0}
    failures = []
    for t in range(trials):
        res = compare_once(rng, max_dim)
        for key in passed:
            if res[key]:
                passed[key] += 1
            elif len(failures) < 5:
                failures.append({"trial": t, "operation": key, "frame": res["frame"]})
    return {"seed": seed, "trials": trials, "passed": passed, "failures": failures,
            "pass": all(v == trials for v in passed.values())}
