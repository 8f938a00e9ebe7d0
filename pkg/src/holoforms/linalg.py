"""Exact sparse linear algebra.

Rational systems are eliminated fraction-free: every row is kept as a
primitive integer vector (denominators cleared, content divided out), and a
pivot step replaces ``r`` by ``a*r - b*P``.  Rationals only reappear when
the reduced echelon form is normalised at the very end.  Gaussian-rational
systems go through plain Gauss-Jordan over :class:`Scalar`.

Vectors and rows are ``dict[int, value]`` keyed by column.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from .scalar import Scalar

Row = Dict[int, object]


def _primitive(row: Dict[int, Fraction]) -> Dict[int, int]:
    den = 1
    for v in row.values():
        d = v.denominator if isinstance(v, Fraction) else 1
        den = den * d // gcd(den, d)
    ints = {k: int(v * den) for k, v in row.items() if v}
    g = 0
    for v in ints.values():
        g = gcd(g, v)
        if g == 1:
            break
    if g > 1:
        ints = {k: v // g for k, v in ints.items()}
    if ints:
        lead = ints[min(ints)]
        if lead < 0:
            ints = {k: -v for k, v in ints.items()}
    return ints


def _eliminate(row: Dict[int, int], piv_row: Dict[int, int], col: int) -> Dict[int, int]:
    a = piv_row[col]
    b = row[col]
    g = gcd(a, b)
    a //= g
    b //= g
    out = {k: a * v for k, v in row.items()}
    for k, v in piv_row.items():
        nv = out.get(k, 0) - b * v
        if nv:
            out[k] = nv
        else:
            out.pop(k, None)
    out.pop(col, None)
    return _primitive(out) if out else out


class IntegerEchelon:
    """Incrementally maintained echelon basis of a rational row space."""

    def __init__(self):
        self.pivots: Dict[int, Dict[int, int]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: Dict[int, Fraction]) -> Dict[int, int]:
        r = _primitive(row)
        pivots = self.pivots
        while r:
            hits = [c for c in r if c in pivots]
            if not hits:
                break
            c = min(hits)
            r = _eliminate(r, pivots[c], c)
        return r

    def add(self, row: Dict[int, Fraction]) -> bool:
        r = self.reduce(row)
        if not r:
            return False
        self.pivots[min(r)] = r
        return True

    def rref(self) -> List[Tuple[int, Dict[int, Fraction]]]:
        """Reduced rows as ``(pivot column, row with pivot 1)``, sorted by pivot."""
        cols = sorted(self.pivots)
        rows = {c: dict(self.pivots[c]) for c in cols}
        for c in reversed(cols):
            pr = rows[c]
            for c2 in cols:
                if c2 < c and c in rows[c2]:
                    rows[c2] = _eliminate(rows[c2], pr, c)
        out = []
        for c in cols:
            r = rows[c]
            lead = Fraction(r[c])
            out.append((c, {k: Fraction(v) / lead for k, v in r.items()}))
        return out


def _is_complex(rows) -> bool:
    for r in rows:
        for v in r.values():
            if isinstance(v, Scalar) and v.im:
                return True
    return False


def _as_fraction(v) -> Fraction:
    if isinstance(v, Scalar):
        return v.re
    return Fraction(v)


def _gauss_jordan(rows: Sequence[Row]) -> List[Tuple[int, Dict[int, Scalar]]]:
    pivots: Dict[int, Dict[int, Scalar]] = {}
    for row in rows:
        r = {k: Scalar.coerce(v) for k, v in row.items() if v}
        while r:
            col = min(r)
            p = pivots.get(col)
            if p is None:
                lead = r[col]
                r = {k: v / lead for k, v in r.items()}
                pivots[col] = r
                break
            f = r[col]
            for k, v in p.items():
                nv = r.get(k, 0) - f * v
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
    cols = sorted(pivots)
    for c in reversed(cols):
        pr = pivots[c]
        for c2 in cols:
            if c2 < c:
                r = pivots[c2]
                f = r.get(c)
                if f:
                    for k, v in pr.items():
                        nv = r.get(k, 0) - f * v
                        if nv:
                            r[k] = nv
                        else:
                            r.pop(k, None)
    return [(c, pivots[c]) for c in cols]


def rref(rows: Sequence[Row]):
    """Reduced row echelon form as a list of ``(pivot column, row)``."""
    if _is_complex(rows):
        return _gauss_jordan(rows)
    ech = IntegerEchelon()
    for r in rows:
        ech.add({k: _as_fraction(v) for k, v in r.items() if v})
    return ech.rref()


def rank(rows: Sequence[Row]) -> int:
    if _is_complex(rows):
        return len(_gauss_jordan(rows))
    ech = IntegerEchelon()
    for r in rows:
        ech.add({k: _as_fraction(v) for k, v in r.items() if v})
    return ech.rank


def nullspace(rows: Sequence[Row], ncols: int) -> List[Dict[int, object]]:
    """Basis of ``{x : row . x = 0 for every row}``, one vector per free column."""
    reduced = rref(rows)
    pivot_cols = {c for c, _ in reduced}
    basis = []
    for free in range(ncols):
        if free in pivot_cols:
            continue
        vec = {free: Fraction(1) if not _is_complex([r for _, r in reduced]) else Scalar(1)}
        for c, r in reduced:
            v = r.get(free)
            if v:
                vec[c] = -v
        basis.append(vec)
    return basis


def solve(rows: Sequence[Row], rhs: Sequence, ncols: int) -> Optional[Dict[int, object]]:
    """One exact solution of ``rows . x = rhs`` (free variables set to 0), or None."""
    aug = []
    for r, b in zip(rows, rhs):
        rr = dict(r)
        if b:
            rr[ncols] = b
        aug.append(rr)
    reduced = rref(aug)
    sol = {}
    for c, r in reduced:
        if c == ncols:
            return None
        v = r.get(ncols)
        if v:
            sol[c] = v
    return sol


def express(vectors: Sequence[Row], target: Row) -> Optional[List[object]]:
    """Coefficients ``c`` with ``sum c_i vectors[i] == target``, or None."""
    keys = set(target)
    for v in vectors:
        keys.update(v)
    rows = []
    rhs = []
    for k in sorted(keys):
        rows.append({i: v[k] for i, v in enumerate(vectors) if v.get(k)})
        rhs.append(target.get(k, 0))
    sol = solve(rows, rhs, len(vectors))
    if sol is None:
        return None
    return [sol.get(i, 0) for i in range(len(vectors))]


def mat_rank(matrix: Sequence[Sequence]) -> int:
    return rank([{j: v for j, v in enumerate(row) if v} for row in matrix])


def mat_mul(a, b):
    n, m, p = len(a), len(b), len(b[0]) if b else 0
    return [[sum((a[i][k] * b[k][j] for k in range(m) if a[i][k] and b[k][j]), Fraction(0)) for j in range(p)] for i in range(n)]


def transpose(a):
    return [list(col) for col in zip(*a)]


def mat_inverse(a):
    n = len(a)
    rows = []
    for i in range(n):
        r = {j: Fraction(v) for j, v in enumerate(a[i]) if v}
        r[n + i] = Fraction(1)
        rows.append(r)
    reduced = rref(rows)
    if len(reduced) != n or any(c != i for i, (c, _) in enumerate(reduced)):
        raise ValueError("matrix is singular")
    return [[r.get(n + j, Fraction(0)) for j in range(n)] for _, r in reduced]


def symmetric_signature(matrix: Sequence[Sequence[Fraction]]) -> Tuple[int, int, int]:
    """``(positive, negative, zero)`` counts of a rational symmetric matrix.

    Exact congruence diagonalisation (symmetric Gaussian elimination).
    """
    a = [[Fraction(x) for x in row] for row in matrix]
    n = len(a)
    pos = neg = 0
    active = list(range(n))
    while active:
        piv = next((i for i in active if a[i][i]), None)
        if piv is None:
            pair = next(
                ((i, j) for i in active for j in active if i < j and a[i][j]), None
            )
            if pair is None:
                break
            i, j = pair
            # replace e_i by e_i + e_j, which makes the diagonal entry 2 a_ij
            for k in range(n):
                a[i][k] += a[j][k]
            for k in range(n):
                a[k][i] += a[k][j]
            piv = i
        d = a[piv][piv]
        if d > 0:
            pos += 1
        else:
            neg += 1
        active.remove(piv)
        for i in active:
            f = a[i][piv] / d
            if f:
                for k in range(n):
                    a[i][k] -= f * a[piv][k]
        for i in active:
            a[piv][i] = a[i][piv] = Fraction(0)
    return pos, neg, n - pos - neg


class SpanTracker:
    """Echelon basis of a growing list of vectors that remembers coordinates.

    Every stored row ``r`` satisfies ``r = sum combo[k] * element_k`` so a
    vector in the span can be written in terms of the original elements.
    Vector keys only need to be mutually comparable.
    """

    def __init__(self):
        self._rows = {}  # pivot key -> (row, combo)
        self.count = 0

    def _reduce(self, vec):
        r = {k: v for k, v in vec.items() if v}
        coords: dict = {}
        rows = self._rows
        while r:
            hits = [k for k in r if k in rows]
            if not hits:
                break
            key = min(hits)
            f = r[key]
            row, combo = rows[key]
            for k, v in row.items():
                nv = r.get(k, 0) - f * v
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
            for k, v in combo.items():
                nv = coords.get(k, 0) + f * v
                if nv:
                    coords[k] = nv
                else:
                    coords.pop(k, None)
        return r, coords

    def coordinates(self, vec):
        """Coordinates of ``vec`` in terms of the added elements, or None."""
        r, coords = self._reduce(vec)
        if r:
            return None
        return coords

    def add(self, vec) -> bool:
        """Append ``vec`` as the next element if it is independent."""
        r, coords = self._reduce(vec)
        if not r:
            return False
        idx = self.count
        self.count += 1
        combo = {k: -v for k, v in coords.items()}
        combo[idx] = combo.get(idx, 0) + 1
        key = min(r)
        lead = r[key]
        self._rows[key] = (
            {k: v / lead for k, v in r.items()},
            {k: v / lead for k, v in combo.items() if v},
        )
        return True
