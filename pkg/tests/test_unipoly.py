from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from adjugate import unipoly as up


def test_basic_arithmetic():
    p = up.upoly([1, 0, 1])
    q = up.upoly([-1, 1])
    assert up.mul(p, q) == up.upoly([-1, 1, -1, 1])
    quo, rem = up.divmod_poly(up.mul(p, q), q)
    assert quo == p and rem == up.ZERO
    assert up.evaluate(p, F(2)) == 5


def test_xgcd_bezout_identity():
    p = up.upoly([1, 0, 1])
    q = up.upoly([-1, 1])
    g, u, v = up.xgcd(p, q)
    assert up.add(up.mul(u, p), up.mul(v, q)) == g == up.ONE


def test_invert_mod():
    mod = up.upoly([-2, 0, 1])  # t^2 - 2
    inv = up.invert_mod(up.upoly([1, 1]), mod)  # 1/(1+t) = t-1 over Q(sqrt2)
    assert up.rem(up.mul(inv, up.upoly([1, 1])), mod) == up.ONE


def test_rational_roots_simple():
    f = up.upoly([F(-6), F(11), F(-6), F(1)])  # (t-1)(t-2)(t-3)
    assert up.rational_roots(f) == [1, 2, 3]


def test_rational_roots_huge_coefficients():
    f = up.mul(up.upoly([F(-2, 3), 1]), up.upoly([F(10**30), F(7), 1]))
    assert up.rational_roots(f) == [F(2, 3)]


def test_rational_roots_none_certified():
    assert up.rational_roots(up.upoly([4820, -2295, 289])) == []
    assert up.rational_roots(up.upoly([1, 1, 0, 0, 1])) == []


def test_squarefree_decomposition():
    q = up.upoly([-1, 1])
    p = up.mul(up.mul(q, q), up.upoly([3, 1]))
    assert up.squarefree_decomposition(p) == [(up.upoly([3, 1]), 1), (q, 2)]


def test_factor_quartic_into_quadratics():
    f = up.mul(up.upoly([-2, 0, 1]), up.upoly([-3, 0, 1]))
    assert sorted(up.factor_squarefree(f)) == sorted(
        [up.upoly([-2, 0, 1]), up.upoly([-3, 0, 1])]
    )


def test_factor_irreducible_quartic():
    f = up.upoly([1, 1, 0, 0, 1])
    assert up.factor_squarefree(f) == [f]


def test_is_irreducible():
    assert up.is_irreducible(up.monic(up.upoly([4820, -2295, 289])))
    assert up.is_irreducible(up.upoly([1, 0, 1]))
    assert up.is_irreducible(up.upoly([-2, 0, 0, 1]))
    assert not up.is_irreducible(up.upoly([-1, 0, 1]))


def test_factor_degree_bound():
    with pytest.raises(ValueError):
        up.factor_squarefree(up.upoly([1, 0, 0, 0, 0, 1]))


def _is_prime_64(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 2^64."""
    if n < 2:
        return False
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if a % n == 0:
            continue
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def test_modular_primes_are_prime():
    # the root-finding certificates rely on these moduli being prime
    assert all(_is_prime_64(p) for p in up._PRIMES64)
    assert len(set(up._PRIMES64)) == len(up._PRIMES64)


small_fraction = st.fractions(
    min_value=-5, max_value=5, max_denominator=6
)


@st.composite
def upolys(draw, max_deg=4):
    coeffs = draw(st.lists(small_fraction, min_size=1, max_size=max_deg + 1))
    return up.upoly(coeffs)


@given(upolys(), upolys())
@settings(max_examples=40, deadline=None)
def test_divmod_invariant(a, b):
    if up.is_zero(b):
        return
    q, r = up.divmod_poly(a, b)
    assert up.add(up.mul(q, b), r) == a
    assert up.degree(r) < up.degree(b)


@given(upolys(max_deg=3), upolys(max_deg=3))
@settings(max_examples=30, deadline=None)
def test_gcd_divides_both(a, b):
    g = up.gcd(a, b)
    if up.is_zero(g):
        assert up.is_zero(a) and up.is_zero(b)
        return
    assert up.rem(a, g) == up.ZERO
    assert up.rem(b, g) == up.ZERO
