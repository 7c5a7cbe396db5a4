"""Shared hypothesis strategies and golden-file access."""

import os
import random

from hypothesis import strategies as st

from bicross.ncpoly import random_element
from bicross.scalars import DeformationSeries, Scalar

GOLDEN = os.path.join(os.path.dirname(__file__), "golden")


def golden(name):
    with open(os.path.join(GOLDEN, name), encoding="utf-8") as fh:
        return fh.read().rstrip("\n")


small_ints = st.integers(-6, 6)
rationals = st.fractions(min_value=-5, max_value=5, max_denominator=7)


@st.composite
def scalars(draw, complex_=True):
    re = draw(rationals)
    im = draw(rationals) if complex_ and draw(st.booleans()) else 0
    return Scalar(re, im)


@st.composite
def series(draw, order=3):
    return DeformationSeries([draw(scalars()) for _ in range(order + 1)], order)


def elements(p, order=2, degree=3, nterms=3):
    """Random normal-form elements of ``p`` driven by a hypothesis-chosen seed."""
    return st.integers(0, 2**32 - 1).map(
        lambda s: random_element(p, order, random.Random(s), degree=degree, nterms=nterms)
    )

