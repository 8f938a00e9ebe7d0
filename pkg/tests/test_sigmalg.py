import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from holoforms.dense import random_vector_form
from holoforms.exterior import FrameContext, Form, VectorForm, raise_index
from holoforms.isotropy import annihilates, form_stabilizer, invariant_forms
from holoforms.sigmalg import (
    DegreeMismatch,
    conconx_decompose,
    dot,
    nijenhuis_torsion,
    nu_tensor_oracle,
)
from holoforms.structures import euclidean_generators, kahler_form, thlms_report

E6 = FrameContext.euclidean(6)
OMEGA = raise_index(kahler_form(E6, 3))


def random_three_form(rng, frame):
    return Form(frame, 3, {I: rng.randint(-2, 2) for I in combinations(range(frame.dim), 3)})


class TestDot:
    def test_complex_structure_squares_to_metric(self):
        D = dot(OMEGA, OMEGA)
        assert dict(D.components) == {(a, (), a, ()): 1 for a in range(6)}
        assert D.is_metric()

    def test_zero(self):
        assert not dot(VectorForm(E6, 1), OMEGA).components

    def test_transpose(self):
        rng = random.Random(0)
        for _ in range(20):
            L = random_vector_form(rng, E6, rng.randint(1, 2))
            M = random_vector_form(rng, E6, rng.randint(1, 2))
            assert dot(M, L) == dot(L, M).transpose()

    def test_needs_positive_degree(self):
        with pytest.raises(DegreeMismatch):
            dot(VectorForm.vector(E6, [1, 0, 0, 0, 0, 0]), OMEGA)


class TestTorsionNijenhuis:
    def test_zero_torsion(self):
        t = nijenhuis_torsion(OMEGA, OMEGA, Form.zero(E6, 3))
        assert not t.nu
        assert not t.N

    def test_nu_is_antisymmetric(self):
        rng = random.Random(1)
        for _ in range(3):
            H = random_three_form(rng, E6)
            t = nijenhuis_torsion(OMEGA, OMEGA, H)
            assert t.nu == nu_tensor_oracle(OMEGA, OMEGA, H)

    def test_nu_with_xi_term(self):
        rng = random.Random(2)
        dec = conconx_decompose(OMEGA, OMEGA)
        H = random_three_form(rng, E6)
        t = nijenhuis_torsion(OMEGA, OMEGA, H, dec.xi)
        assert t.nu == nu_tensor_oracle(OMEGA, OMEGA, H, dec.xi)

    def test_h_must_be_three_form(self):
        with pytest.raises(DegreeMismatch):
            nijenhuis_torsion(OMEGA, OMEGA, Form.zero(E6, 2))

    def test_invariant_torsion_gives_invariant_nu(self):
        gens = euclidean_generators("G2xR7")
        frame = gens[0][1].frame
        h = form_stabilizer(frame, [g for _, g in gens])
        inv = invariant_forms(h, 3)
        assert len(inv) == 1
        L = raise_index(gens[0][1])
        dec = conconx_decompose(L, L)
        t = nijenhuis_torsion(L, L, inv[0] * 3, dec.xi)
        assert annihilates(h, t.nu)

    def test_sp2_has_no_invariant_torsion(self):
        # the only Sp(2)-invariant H is zero, for which nu vanishes
        gens = euclidean_generators("Sp(n)xR4n", 2)
        frame = gens[0][1].frame
        h = form_stabilizer(frame, [g for _, g in gens])
        assert invariant_forms(h, 3) == []
        L, M = raise_index(gens[0][1]), raise_index(gens[1][1])
        dec = conconx_decompose(L, M)
        assert dec is not None
        assert not nijenhuis_torsion(L, M, Form.zero(frame, 3), dec.xi).nu


class TestConconx:
    def test_kahler(self):
        dec = conconx_decompose(OMEGA, OMEGA)
        assert not dec.sigma
        assert dec.xi == Form.scalar(E6, 2)

    def test_identity(self):
        I = VectorForm.identity(E6)
        dec = conconx_decompose(I, I)
        assert not dec.sigma
        assert dec.xi == Form.scalar(E6, 2)
        E4 = FrameContext.euclidean(4)
        I4 = VectorForm.identity(E4)
        assert conconx_decompose(I4, I4).xi == Form.scalar(E4, 2)

    def test_random_pair_is_not_decomposable(self):
        rng = random.Random(3)
        for _ in range(5):
            L = random_vector_form(rng, E6, 1)
            M = random_vector_form(rng, E6, 1)
            assert conconx_decompose(L, M) is None

    @pytest.mark.parametrize(
        "name, n",
        [("U(n)xR2n", 3), ("SU(n)xR2n", 3), ("Sp(n)xR4n", 1), ("G2xR7", None), ("SO(n)xRn", 4)],
    )
    def test_berger_pairs(self, name, n):
        report = thlms_report(name, n, seed=0)
        assert all(p["decomposable"] for p in report["pairs"])
        assert report["pass"]


@settings(max_examples=15)
@given(st.integers(0, 2**32 - 1), st.integers(3, 5))
def test_nu_matches_oracle_property(seed, dim):
    rng = random.Random(seed)
    frame = FrameContext.euclidean(dim)
    phi = Form(frame, 2, {I: rng.randint(-2, 2) for I in combinations(range(dim), 2)})
    psi = Form(frame, 2, {I: rng.randint(-2, 2) for I in combinations(range(dim), 2)})
    H = random_three_form(rng, frame)
    L, M = raise_index(phi), raise_index(psi)
    assert nijenhuis_torsion(L, M, H).nu == nu_tensor_oracle(L, M, H)
