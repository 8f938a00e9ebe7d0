import random
from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from holoforms.dense import dense_wedge
from holoforms.expressions import parse_form
from holoforms.exterior import FrameContext, Form, barwedge, wedge, wedge_all
from holoforms.nullcone import (
    NullForm,
    NullityError,
    PatchTransform,
    barcurlywedge,
    breve,
    curly_power,
    curlywedge,
    from_transverse,
    globality_report,
    is_null_along,
    kappa,
    parity,
    patch_transform,
    random_null_form,
    random_patch_transform,
    transformed_metric,
)
from holoforms.structures import closure_generators, kahler_form

LC10 = FrameContext.lightcone(10)
K = kappa(LC10)
OMEGA_T = kahler_form(LC10, 4)
OMEGA = wedge(K, OMEGA_T)


class TestNullity:
    def test_kappa_wedge_kahler_is_null(self):
        assert is_null_along(K, OMEGA)

    def test_plus_direction_is_not_null(self):
        phi = wedge(Form.basis(LC10, (1,)), OMEGA_T)
        assert not is_null_along(K, phi)
        assert barwedge(K, phi)

    def test_transverse_form_is_not_null(self):
        assert not is_null_along(K, OMEGA_T)

    def test_null_form_type_rejects(self):
        with pytest.raises(NullityError):
            NullForm(OMEGA_T)
        assert NullForm(OMEGA).breve() == OMEGA_T
        assert NullForm(OMEGA).parity == 0

    def test_parity_grading(self):
        assert parity(OMEGA) == 0
        assert parity(wedge(K, Form.basis(LC10, (2, 3, 4)))) == 1


class TestBreve:
    def test_strips_kappa(self):
        assert breve(OMEGA) == OMEGA_T

    def test_round_trip(self):
        rng = random.Random(0)
        for _ in range(100):
            frame = FrameContext.lightcone(rng.randint(3, 10))
            phi = random_null_form(rng, frame, rng.randint(1, min(4, frame.dim - 1)))
            assert wedge(kappa(frame), breve(phi)) == phi

    def test_representative_depends_on_patch(self):
        frame = FrameContext.lightcone(6)
        psi = parse_form("e12+e34", frame)
        phi = from_transverse(psi)
        t = PatchTransform(PatchTransform.identity(4).O, (1, 0, 2, 0))
        # the null form is patch independent, its transported representative is not
        assert patch_transform(phi, t) == phi
        diff = patch_transform(psi, t) - breve(phi)
        assert diff
        assert all(I[0] == 0 for I in diff.terms)
        assert not wedge(kappa(frame), diff)


class TestCurlyWedge:
    def test_definition(self):
        assert curlywedge(OMEGA, OMEGA) == wedge(K, wedge(OMEGA_T, OMEGA_T))

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_kahler_power(self, n):
        frame = FrameContext.lightcone(2 * n + 2)
        wt = kahler_form(frame, n)
        top = curly_power(from_transverse(wt), n)
        vol = Form.basis(frame, (0,) + tuple(range(2, 2 * n + 2)))
        assert top == vol * factorial(n)
        dense = wt
        for _ in range(n - 1):
            dense = dense_wedge(dense, wt)
        assert top == wedge(kappa(frame), dense)

    def test_associative(self):
        rng = random.Random(2)
        for _ in range(50):
            frame = FrameContext.lightcone(rng.randint(5, 8))
            a, b, c = (random_null_form(rng, frame, rng.randint(1, 3)) for _ in range(3))
            assert curlywedge(curlywedge(a, b), c) == curlywedge(a, curlywedge(b, c))

    def test_rejects_non_null(self):
        with pytest.raises(NullityError):
            curlywedge(OMEGA_T, OMEGA)


class TestBarCurlyWedge:
    def test_kappa_commutes(self):
        rng = random.Random(3)
        for _ in range(20):
            phi = random_null_form(rng, LC10, rng.randint(1, 4))
            assert not barcurlywedge(K, phi)
            assert not barcurlywedge(phi, K)

    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
    def test_su_constants_omega_chi(self, n):
        g = dict(closure_generators("SU(n)xR2n", n))
        assert barcurlywedge(g["omega"], g["chi1"]) == g["chi2"] * -n
        assert barcurlywedge(g["omega"], g["chi2"]) == g["chi1"] * n

    def test_even_su_chi_product(self):
        # chi normalised to |chi|^2 = 2 gives -2/(n-1)!; raw forms carry |chi|^2 = 2^(n-1)
        n = 4
        g = dict(closure_generators("SU(n)xR2n", n))
        top = curly_power(g["omega"], n - 1)
        raw = barcurlywedge(g["chi1"], g["chi2"])
        assert raw * Fraction(2, 2 ** (n - 1)) == top * Fraction(-2, factorial(n - 1))

    def test_barwedge_of_null_forms_vanishes(self):
        rng = random.Random(4)
        for _ in range(50):
            a = random_null_form(rng, LC10, rng.randint(1, 4))
            b = random_null_form(rng, LC10, rng.randint(1, 4))
            assert not barwedge(a, b)


class TestPatches:
    def test_identity(self):
        t = PatchTransform.identity(8)
        assert patch_transform(OMEGA, t) == OMEGA

    def test_orthogonality_enforced(self):
        with pytest.raises(ValueError):
            PatchTransform(((1, 1), (0, 1)), (0, 0))

    def test_kappa_and_metric_invariant(self):
        rng = random.Random(5)
        for _ in range(30):
            m = rng.randint(2, 8)
            frame = FrameContext.lightcone(m + 2)
            t = random_patch_transform(rng, m)
            assert patch_transform(kappa(frame), t) == kappa(frame)
            assert transformed_metric(frame, t) == [list(r) for r in frame.metric]

    def test_globality_report(self):
        rep = globality_report(seed=0, trials=200)
        assert rep["passed"] == {"curlywedge": 200, "barcurlywedge": 200, "kappa": 200, "metric": 200}
        assert rep["pass"]


@settings(max_examples=80)
@given(st.integers(0, 2**32 - 1), st.integers(4, 8))
def test_globality_property(seed, dim):
    rng = random.Random(seed)
    frame = FrameContext.lightcone(dim)
    m = dim - 2
    lam = random_null_form(rng, frame, rng.randint(2, min(4, m + 1)))
    phi = random_null_form(rng, frame, rng.randint(2, min(4, m + 1)))
    t = random_patch_transform(rng, m)
    P = lambda f: patch_transform(f, t)  # noqa: E731
    assert P(curlywedge(lam, phi)) == curlywedge(P(lam), P(phi))
    assert P(barcurlywedge(lam, phi)) == barcurlywedge(P(lam), P(phi))
    assert is_null_along(kappa(frame), P(lam))


@settings(max_examples=40)
@given(st.integers(0, 2**32 - 1))
def test_barcurlywedge_jacobi_on_random_odd_forms(seed):
    # on bosonic (odd-degree) null forms the bracket is a Lie bracket
    rng = random.Random(seed)
    frame = FrameContext.lightcone(rng.randint(5, 7))
    a, b, c = (random_null_form(rng, frame, 3) for _ in range(3))
    br = barcurlywedge
    total = br(a, br(b, c)) + br(b, br(c, a)) + br(c, br(a, b))
    assert not total
    assert br(a, b) == -br(b, a)


def test_wedge_all_matches_power():
    assert wedge_all([OMEGA, OMEGA_T]) == curlywedge(OMEGA, OMEGA)
