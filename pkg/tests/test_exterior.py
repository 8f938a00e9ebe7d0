from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from holoforms.dense import dense_barwedge, dense_inner, dense_wedge
from holoforms.expressions import parse_form
from holoforms.exterior import (
    MINUS,
    PLUS,
    FrameContext,
    FrameMismatch,
    Form,
    VectorForm,
    barwedge,
    format_form,
    inner,
    lower_index,
    metric_pair,
    raise_index,
    vbarwedge,
    wedge,
    wedge_all,
)
from holoforms.structures import kahler_form, quaternionic_form

from strategies import forms, frames, rationals, vector_forms

E4 = FrameContext.euclidean(4)
E8 = FrameContext.euclidean(8)
LC6 = FrameContext.lightcone(6)


def e(frame, *idx, coef=1):
    return Form.basis(frame, idx, coef)


class TestFrame:
    def test_euclidean_metric_is_identity(self):
        assert all(E4.g(a, b) == (a == b) for a in range(4) for b in range(4))

    def test_lightcone_metric(self):
        g = LC6.g
        assert g(MINUS, PLUS) == g(PLUS, MINUS) == 1
        assert g(MINUS, MINUS) == g(PLUS, PLUS) == 0
        assert all(g(a, b) == (a == b) for a in range(2, 6) for b in range(2, 6))
        assert all(g(a, b) == 0 for a in (MINUS, PLUS) for b in range(2, 6))

    def test_metric_inverse(self):
        for frame in (E4, LC6):
            G, Gi = frame.metric, frame.inverse_metric
            n = frame.dim
            prod = [[sum(G[a][c] * Gi[c][b] for c in range(n)) for b in range(n)] for a in range(n)]
            assert prod == [[Fraction(int(a == b)) for b in range(n)] for a in range(n)]

    def test_frame_mismatch(self):
        with pytest.raises(FrameMismatch):
            wedge(e(E4, 0), e(E8, 0))


class TestForm:
    def test_stored_terms_are_canonical(self):
        phi = Form(E4, 2, {(0, 1): 1, (2, 3): 0})
        assert dict(phi.terms) == {(0, 1): 1}
        with pytest.raises(ValueError):
            Form(E4, 2, {(1, 0): 1})
        with pytest.raises(ValueError):
            Form(E4, 2, {(0, 1, 2): 1})

    def test_basis_sorts_with_sign(self):
        assert e(E4, 1, 0) == -e(E4, 0, 1)
        assert not e(E4, 1, 1)

    def test_wedge_alternation(self):
        assert wedge(e(E4, 0), e(E4, 1)) == e(E4, 0, 1)
        assert not wedge(e(E4, 0), e(E4, 0))

    def test_kahler_top_power(self):
        w = kahler_form(E8, 4)
        top = wedge_all([w] * 4)
        assert top == e(E8, *range(8), coef=24)
        assert top == dense_wedge(dense_wedge(w, w), dense_wedge(w, w))

    def test_null_kills_wedge_with_kappa(self):
        k = e(LC6, MINUS)
        psi = parse_form("e12+e34", LC6)
        assert not wedge(k, wedge(k, psi))


class TestRaise:
    def test_raise_kappa_points_along_plus(self):
        k = e(LC6, MINUS)
        K = raise_index(k)
        assert dict(K.terms) == {(PLUS, ()): 1}
        assert metric_pair(k, k) == 0

    def test_raise_euclidean_two_form(self):
        R = raise_index(e(E4, 0, 1))
        assert dict(R.terms) == {(0, (1,)): 1, (1, (0,)): -1}

    def test_degree_zero_cannot_be_raised(self):
        with pytest.raises(ValueError):
            raise_index(Form.scalar(E4, 2))

    def test_lower_rejects_non_forms(self):
        with pytest.raises(ValueError):
            lower_index(VectorForm(E4, 1, {(0, (1,)): 1}))


class TestInner:
    def test_identity_counts_degree(self):
        I = VectorForm.identity(E8)
        for p in range(1, 5):
            phi = Form(E8, p, {K: k + 1 for k, K in enumerate(list(combinations(range(8), p))[:5])})
            assert inner(I, phi) == phi * p

    def test_hermitian_form_self_contraction(self):
        w = kahler_form(E4, 2)
        assert not inner(raise_index(w), w)
        assert not dense_inner(raise_index(w), w)

    def test_null_vector_contraction(self):
        k = e(LC6, MINUS)
        psi = parse_form("e123-2*e234", LC6)
        assert not inner(raise_index(k), wedge(k, psi))

    def test_contraction_sign_convention(self):
        # i_{e_j} e^{i1..ip} carries (-1)^(k-1) when j is the k-th index
        X = VectorForm.vector(E4, [0, 0, 1, 0])
        assert inner(X, e(E4, 0, 1, 2)) == e(E4, 0, 1)
        X = VectorForm.vector(E4, [0, 1, 0, 0])
        assert inner(X, e(E4, 0, 1, 2)) == -e(E4, 0, 2)


class TestBarwedge:
    def test_hermitian_form_with_itself(self):
        w = kahler_form(E8, 4)
        assert not barwedge(w, w)

    def test_quaternionic_triple(self):
        w = {r: quaternionic_form(E8, 2, r) for r in (1, 2, 3)}
        for r, s, t in ((1, 2, 3), (2, 3, 1), (3, 1, 2)):
            prod = barwedge(w[r], w[s])
            assert prod == dense_barwedge(w[r], w[s])
            assert prod in (w[t] * 2, w[t] * -2)
            assert barwedge(w[s], w[r]) == -prod

    def test_null_second_condition(self):
        k = e(LC6, MINUS)
        psi = parse_form("e12+e34", LC6)
        assert not barwedge(k, wedge(k, psi))

    def test_degree_zero_rejected(self):
        with pytest.raises(ValueError):
            barwedge(Form.scalar(E4), e(E4, 0))


class TestText:
    def test_print_and_parse(self):
        phi = parse_form("e12+e34-1/2*e(1,3)", E8)
        assert format_form(phi) == "e12-1/2*e13+e34"
        big = FrameContext.euclidean(12)
        psi = parse_form("e(1,2,10)", big)
        assert format_form(psi) == "e(1,2,10)"
        lc = parse_form("em12+(1/2+i)*em34", LC6)
        assert parse_form(format_form(lc), LC6) == lc

    @given(frames(2, 11), st.integers(0, 4), st.data())
    def test_round_trip(self, frame, degree, data):
        phi = data.draw(forms(frame, min(degree, frame.dim)))
        assert parse_form(format_form(phi), frame, phi.degree) == phi


# ---------------------------------------------------------------------------
# properties


@st.composite
def frame_and_forms(draw, degrees, min_dim=2, max_dim=10, coef=None):
    frame = draw(frames(min_dim, max_dim))
    out = []
    for d in degrees:
        k = draw(st.integers(0, min(d, frame.dim)))
        out.append(draw(forms(frame, k) if coef is None else forms(frame, k, coef)))
    return frame, out


@settings(max_examples=500)
@given(frame_and_forms((4, 4)))
def test_graded_commutativity(args):
    _, (a, b) = args
    ab, ba = wedge(a, b), wedge(b, a)
    assert ab == (ba if (a.degree * b.degree) % 2 == 0 else -ba)
    if a.degree % 2:
        assert not wedge(a, a)


@settings(max_examples=200)
@given(frame_and_forms((3, 3, 3)))
def test_wedge_associative(args):
    _, (a, b, c) = args
    assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))


@settings(max_examples=500)
@given(frames(2, 7), st.integers(0, 2), st.data())
def test_inner_is_graded_derivation(frame, l, data):
    L = data.draw(vector_forms(frame, min(l, frame.dim)))
    p = data.draw(st.integers(1, min(3, frame.dim)))
    q = data.draw(st.integers(1, min(3, frame.dim)))
    psi, chi = data.draw(forms(frame, p)), data.draw(forms(frame, q))
    lhs = inner(L, wedge(psi, chi))
    first, second = wedge(inner(L, psi), chi), wedge(psi, inner(L, chi))
    sign = -1 if (p * (L.lower_degree - 1)) % 2 else 1
    assert lhs == first + second * sign


@settings(max_examples=100)
@given(frames(3, 6), st.data())
def test_inner_bracket_commutator(frame, data):
    lam = data.draw(forms(frame, 2, rationals))
    chi = data.draw(forms(frame, 3, rationals))
    L, M = raise_index(lam), raise_index(chi)
    l, m = L.lower_degree, M.lower_degree
    bracket = vbarwedge(L, M)
    swapped = vbarwedge(M, L)
    sign_ab = -1 if ((l - 1) * (m - 1)) % 2 else 1
    for _ in range(20):
        k = data.draw(st.integers(1, frame.dim))
        w = data.draw(forms(frame, k, rationals))
        lhs = inner(L, inner(M, w)) - inner(M, inner(L, w)) * sign_ab
        rhs = inner(bracket, w) - inner(swapped, w) * sign_ab
        assert lhs == rhs


@settings(max_examples=50)
@given(frames(1, 6), st.data())
def test_lower_raise_round_trip(frame, data):
    k = data.draw(st.integers(1, frame.dim))
    phi = data.draw(forms(frame, k))
    assert lower_index(raise_index(phi)) == phi


@settings(max_examples=150)
@given(frames(2, 5), st.data())
def test_sparse_matches_dense(frame, data):
    p = data.draw(st.integers(0, min(2, frame.dim)))
    q = data.draw(st.integers(0, frame.dim - p))
    a, b = data.draw(forms(frame, p)), data.draw(forms(frame, q))
    assert wedge(a, b) == dense_wedge(a, b)
    r = data.draw(st.integers(1, min(3, frame.dim)))
    s = data.draw(st.integers(1, min(3, frame.dim)))
    lam, chi = data.draw(forms(frame, r)), data.draw(forms(frame, s))
    assert barwedge(lam, chi) == dense_barwedge(lam, chi)
