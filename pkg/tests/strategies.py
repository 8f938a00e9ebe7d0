"""Hypothesis strategies shared by the property tests."""

from fractions import Fraction
from itertools import combinations

from hypothesis import strategies as st

from holoforms.exterior import FrameContext, Form, VectorForm
from holoforms.scalar import Scalar

rationals = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))
scalars = st.builds(Scalar, rationals, rationals)
real_scalars = st.builds(Scalar, rationals)


def frames(min_dim=2, max_dim=6):
    euclidean = st.integers(min_dim, max_dim).map(FrameContext.euclidean)
    lightcone = st.integers(max(min_dim, 2), max_dim).map(FrameContext.lightcone)
    return st.one_of(euclidean, lightcone)


@st.composite
def forms(draw, frame, degree, coef=scalars, max_terms=6):
    keys = list(combinations(range(frame.dim), degree))
    chosen = draw(st.lists(st.sampled_from(keys), max_size=max_terms, unique=True)) if keys else []
    return Form(frame, degree, {k: draw(coef) for k in chosen})


@st.composite
def vector_forms(draw, frame, lower_degree, max_terms=6):
    keys = [(mu, J) for mu in range(frame.dim) for J in combinations(range(frame.dim), lower_degree)]
    chosen = draw(st.lists(st.sampled_from(keys), max_size=max_terms, unique=True)) if keys else []
    return VectorForm(frame, lower_degree, {k: draw(rationals) for k in chosen})
