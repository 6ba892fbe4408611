from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from adjugate import unipoly as up
from adjugate.errors import FactorizationRequiredError
from adjugate.numberfield import ExtElem, NumberField, ext_reduce

SQRT2 = NumberField(up.upoly([-2, 0, 1]))
CUBIC = NumberField(up.upoly([-2, 0, 0, 1]))  # t^3 = 2


def test_ext_reduce_examples():
    assert ext_reduce(up.upoly([-2, 0, 1]), up.upoly([-2, 0, 1])).is_zero()
    r = ext_reduce(up.upoly([0, 0, 0, 1]), up.upoly([-2, 0, 1]))
    assert r.coeffs == up.upoly([0, 2])  # t^3 = 2t mod t^2-2


def test_reducible_modulus_rejected():
    with pytest.raises(FactorizationRequiredError):
        NumberField(up.upoly([-1, 0, 1]))
    with pytest.raises(FactorizationRequiredError):
        NumberField(up.upoly([0, -1, 0, 1]))  # t(t^2-1): not squarefree? t^3-t is squarefree but reducible
    with pytest.raises(ValueError):
        NumberField(up.upoly([1, 1]))  # degree 1


def test_discriminant_sign_of_conjugate_block():
    disc = F(2295) ** 2 - 4 * 289 * 4820
    assert disc == -304895
    NumberField(up.monic(up.upoly([4820, -2295, 289])))  # still a field over Q


def test_minimal_polynomial_root_property():
    t = SQRT2.generator()
    assert (t * t - 2).is_zero()
    u = CUBIC.generator()
    assert (u**3 - 2).is_zero()


def test_field_inverse():
    t = SQRT2.generator()
    x = 3 + 2 * t
    assert (x * x.inverse() - 1).is_zero()
    with pytest.raises(ZeroDivisionError):
        SQRT2.zero().inverse()


coeff = st.integers(-6, 6)


@given(coeff, coeff, coeff, coeff, coeff, coeff)
@settings(max_examples=50, deadline=None)
def test_associativity_cubic_field(a0, a1, b0, b1, c0, c1):
    a = CUBIC.element([a0, a1, 1])
    b = CUBIC.element([b0, b1])
    c = CUBIC.element([c0, c1, 1])
    assert ((a * b) * c).coeffs == (a * (b * c)).coeffs
    assert ((a + b) * c).coeffs == (a * c + b * c).coeffs
