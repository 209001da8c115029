"""Gaussian-rational field arithmetic."""

from fractions import Fraction

import hypothesis.strategies as st
from hypothesis import given

from freeinv import GaussianRational
from freeinv.parsing import parse_scalar
from freeinv.scalars import format_scalar

gr = st.builds(
    GaussianRational,
    st.fractions(min_value=Fraction(-5), max_value=Fraction(5), max_denominator=6),
    st.fractions(min_value=Fraction(-5), max_value=Fraction(5), max_denominator=6),
)


def test_basic_ops():
    i = GaussianRational(0, 1)
    assert i * i == -1
    assert (GaussianRational(1, 2) * GaussianRational(1, -2)) == 5
    assert GaussianRational(Fraction(1, 2)) + GaussianRational(Fraction(1, 2)) == 1


@given(gr, gr, gr)
def test_field_axioms(a, b, c):
    assert a + (b + c) == (a + b) + c
    assert a * (b * c) == (a * b) * c
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a


@given(gr.filter(bool), gr)
def test_division(a, b):
    assert (b / a) * a == b
    assert a / a == 1


@given(gr)
def test_format_parse_round_trip(c):
    assert parse_scalar(format_scalar(c)) == c


@given(gr, gr)
def test_conjugate_multiplicative(a, b):
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()
