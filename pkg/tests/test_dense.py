import random

from holoforms.dense import (
    dense_barwedge,
    dense_inner,
    dense_raise,
    dense_wedge,
    from_dense,
    oracle_report,
    random_form,
    to_dense,
)
from holoforms.exterior import FrameContext, Form, VectorForm

E4 = FrameContext.euclidean(4)
LC4 = FrameContext.lightcone(4)


def e(frame, *idx):
    return Form.basis(frame, idx)


class TestDenseKernel:
    def test_array_is_antisymmetric(self):
        arr = to_dense(e(E4, 0, 1, 3) * 2)
        assert arr[0, 1, 3] == 2 and arr[1, 0, 3] == -2 and arr[3, 1, 0] == -2
        assert arr[0, 0, 3] == 0

    def test_round_trip(self):
        rng = random.Random(0)
        for _ in range(30):
            frame = FrameContext.euclidean(rng.randint(1, 5))
            k = rng.randint(0, frame.dim)
            phi = random_form(rng, frame, k)
            assert from_dense(to_dense(phi), frame, k) == phi

    def test_wedge_of_basis_forms(self):
        assert dense_wedge(e(E4, 0), e(E4, 1)) == e(E4, 0, 1)
        assert dense_wedge(e(E4, 1), e(E4, 0)) == e(E4, 0, 1) * -1
        assert not dense_wedge(e(E4, 2), e(E4, 2))
        assert dense_wedge(e(E4, 1, 3), e(E4, 0, 2)) == e(E4, 0, 1, 2, 3) * -1

    def test_identity_counts_degree(self):
        I = VectorForm.identity(E4)
        assert dense_inner(I, e(E4, 0, 2)) == e(E4, 0, 2) * 2
        assert dense_inner(I, e(E4, 1, 2, 3)) == e(E4, 1, 2, 3) * 3

    def test_raise_swaps_lightcone_directions(self):
        # g = 2 e- e+ so raising e- gives the + direction
        assert dense_raise(e(LC4, 0)) == VectorForm.vector(LC4, [0, 1, 0, 0])
        assert dense_raise(e(LC4, 2)) == VectorForm.vector(LC4, [0, 0, 1, 0])

    def test_barwedge_of_one_forms_is_metric(self):
        assert dense_barwedge(e(LC4, 0), e(LC4, 1)) == Form.scalar(LC4, 1)
        assert not dense_barwedge(e(LC4, 0), e(LC4, 0))


class TestOracleReport:
    def test_small_run(self):
        rep = oracle_report(seed=5, trials=100)
        assert rep["pass"] and not rep["failures"]
        assert rep["passed"] == {"wedge": 100, "inner": 100, "barwedge": 100}

    def test_deterministic(self):
        assert oracle_report(seed=1, trials=20) == oracle_report(seed=1, trials=20)
