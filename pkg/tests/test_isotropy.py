import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from holoforms.clifford import SpinorModel, bilinear, spin_act
from holoforms.expressions import parse_spinor, parse_spinor_list
from holoforms.isotropy import (
    Subalgebra,
    analyse,
    annihilates,
    bilinear_space,
    invariant_forms,
    isotropy_algebra,
    so_basis,
)
from holoforms.structures import majorana_projection

TEN = SpinorModel.ten_d()
EIGHT = SpinorModel.eight_d()


def reps(text, model=TEN):
    return majorana_projection(parse_spinor_list(text, model))


@pytest.fixture(scope="module")
def spin7():
    return isotropy_algebra(reps("1+e1234"))


@pytest.fixture(scope="module")
def su4():
    return isotropy_algebra(reps("1"))


@pytest.fixture(scope="module")
def sp2():
    return isotropy_algebra(reps("1, i(e12+e34)"))


class TestIsotropyAlgebra:
    def test_spin7(self, spin7):
        rep = analyse(spin7, TEN)
        assert (rep.dim, rep.ideal_dim) == (29, 8)
        assert all(rep.ideal_checks.values())
        assert rep.name == "Spin(7)xR8"

    def test_su4_from_real_and_imaginary_parts(self, su4):
        assert len(reps("1")) == 2
        rep = analyse(su4, TEN)
        assert (rep.dim, rep.ideal_dim) == (23, 8)

    def test_g2_is_compact_semisimple(self):
        h = isotropy_algebra(reps("1+e1234, e15+e2345"))
        rep = analyse(h, TEN)
        assert (rep.dim, rep.ideal_dim) == (14, 0)
        assert rep.killing_signature == (0, 14, 0)
        assert rep.radical_dim == 0

    def test_eight_d_spin7(self):
        h = isotropy_algebra(reps("1+e1234", EIGHT))
        assert h.dim == 21
        assert analyse(h, EIGHT).killing_signature[0] == 0

    def test_certificate(self, sp2):
        assert sp2.verify_certificate()
        for i in range(sp2.dim):
            for j in range(sp2.dim):
                assert sp2.coordinates(sp2.basis[i].bracket(sp2.basis[j])) is not None

    def test_elements_are_in_so(self, sp2):
        assert all(x.is_antisymmetric() for x in sp2.basis)


class TestInvariantForms:
    def test_sp2_triple(self, sp2):
        assert len(invariant_forms(sp2, 2, transverse=True)) == 3

    def test_trivial_algebra(self):
        frame = TEN.frame
        h = Subalgebra.from_basis(frame, [])
        assert len(invariant_forms(h, 2, transverse=True)) == 28

    def test_su4_kahler_only(self, su4):
        forms = invariant_forms(su4, 2, transverse=True)
        assert len(forms) == 1
        assert set(forms[0].terms) == {(2, 3), (4, 5), (6, 7), (8, 9)}

    def test_bilinears_are_invariant(self, sp2):
        spinors = reps("1, i(e12+e34)")
        for k in (1, 2, 3):
            _, basis = bilinear_space(spinors, k)
            assert all(annihilates(sp2, f) for f in basis)


class TestBilinearSpace:
    @pytest.mark.parametrize(
        "text, model, expected",
        [
            ("1+e1234, e15+e2345", TEN, 3),
            ("1, e15", TEN, 4),
            ("1, e12, e15, e25", TEN, 6),
            ("1+e1234, e1+e234", EIGHT, 1),
        ],
        ids=["G2", "SU3", "SU2", "G2-8d"],
    )
    def test_one_form_counts(self, text, model, expected):
        dim, _ = bilinear_space(reps(text, model), 1)
        assert dim == expected

    def test_noncompact_one_form_is_kappa(self):
        dim, basis = bilinear_space(reps("1, i(e12+e34)"), 1)
        assert dim == 1
        assert set(basis[0].terms) == {(0,)}


def test_basis_element_is_antisymmetric():
    frame = TEN.frame
    for x in so_basis(frame):
        assert x.is_antisymmetric()
    assert len(so_basis(EIGHT.frame)) == 28


@settings(max_examples=30)
@given(st.integers(0, 2**32 - 1))
def test_bilinear_equivariance_property(seed):
    rng = random.Random(seed)
    basis = so_basis(EIGHT.frame)
    x = basis[rng.randrange(len(basis))]
    a = parse_spinor(rng.choice(["1+e1234", "e12", "e1+e234", "e13-e24"]), EIGHT)
    b = parse_spinor(rng.choice(["1", "e12+e34", "e1", "e123"]), EIGHT)
    k = rng.randint(1, 4)
    lhs = bilinear(spin_act(x, a), b, k) + bilinear(a, spin_act(x, b), k)
    assert lhs == x.act_on_form(bilinear(a, b, k))


@settings(max_examples=20)
@given(st.integers(0, 2**32 - 1))
def test_isotropy_of_random_combination_is_closed(seed):
    rng = random.Random(seed)
    words = ["1", "e12", "e34", "e1234", "e13", "e24"]
    text = "+".join(f"{rng.randint(1, 3)}*{w}" for w in rng.sample(words, 3))
    h = isotropy_algebra(reps(text, EIGHT))
    assert h.verify_certificate()
    assert all(x.is_antisymmetric() for x in h.basis)
    _, basis = bilinear_space(reps(text, EIGHT), 2)
    assert all(annihilates(h, f) for f in basis)
