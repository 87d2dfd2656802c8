from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from thetaorbit.errors import CapExceeded
from thetaorbit.polynomial import ExactPolynomial, difference_product, monomial, symmetrize_check

V = ("x", "y", "z")


def test_arithmetic():
    x, y = ExactPolynomial.variable(V, 0), ExactPolynomial.variable(V, 1)
    assert (x + y) ** 2 == x * x + 2 * x * y + y * y
    assert (x - x).is_zero()
    assert ((x + y) ** 3).is_homogeneous() and (x + 1).degree() == 1
    assert (x * y + x).homogeneous_part(2) == x * y


def test_difference_product_is_alternating():
    d = difference_product(V, [0, 1, 2])
    swapped = d.permuted([1, 0, 2])
    assert swapped == -d
    assert symmetrize_check(d * d, [0, 1, 2])
    assert (d * d).is_symmetric_in([0, 1, 2])


def test_cap():
    x = ExactPolynomial.linear(V, [1, 1, 1])
    x.cap = 6
    with pytest.raises(CapExceeded):
        x ** 3


coef = st.integers(-3, 3)


@settings(max_examples=40)
@given(st.lists(coef, min_size=3, max_size=3), st.lists(coef, min_size=3, max_size=3),
       st.lists(st.fractions(max_denominator=5), min_size=3, max_size=3))
def test_evaluation_is_a_ring_map(a, b, pt):
    p, q = ExactPolynomial.linear(V, a) + 1, ExactPolynomial.linear(V, b) ** 2
    assert (p * q).evaluate(pt) == p.evaluate(pt) * q.evaluate(pt)
    assert (p + q).evaluate(pt) == p.evaluate(pt) + q.evaluate(pt)
    assert monomial(V, (1, 2, 0), Fraction(1, 2)).evaluate(pt) == Fraction(1, 2) * pt[0] * pt[1] ** 2
