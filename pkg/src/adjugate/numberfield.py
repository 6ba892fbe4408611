"""Arithmetic in quadratic and cubic extensions of the rationals.

An ExtElem is a residue class modulo a monic irreducible polynomial q(t) of
degree 2 or 3.  Field structure is guaranteed by certifying irreducibility on
construction; reducible moduli must be split by the caller first.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from . import unipoly
from .errors import FactorizationRequiredError
from .unipoly import UPoly


@dataclass(frozen=True)
class NumberField:
    """Q[t]/(q) for monic irreducible squarefree q of degree 2 or 3."""

    modulus: UPoly

    def __post_init__(self):
        q = self.modulus
        d = unipoly.degree(q)
        if d not in (2, 3):
            raise ValueError("extension degree must be 2 or 3")
        if unipoly.lc(q) != 1:
            raise ValueError("modulus must be monic")
        if unipoly.degree(unipoly.gcd(q, unipoly.derivative(q))) > 0:
            raise FactorizationRequiredError("modulus is not squarefree")
        if not _certify_irreducible(q):
            raise FactorizationRequiredError(
                "reducible modulus: split into irreducible factors first"
            )

    @property
    def degree(self) -> int:
        return unipoly.degree(self.modulus)

    def element(self, coeffs: Union[UPoly, Sequence]) -> "ExtElem":
        p = unipoly.upoly(coeffs)
        return ExtElem(self, unipoly.rem(p, self.modulus))

    def zero(self) -> "ExtElem":
        return ExtElem(self, unipoly.ZERO)

    def one(self) -> "ExtElem":
        return ExtElem(self, unipoly.ONE)

    def generator(self) -> "ExtElem":
        return self.element((0, 1))


def _certify_irreducible(q: UPoly) -> bool:
    """Irreducibility for degrees 2 and 3: no rational root, and for degree 2
    equivalently a non-square discriminant."""
    d = unipoly.degree(q)
    if d == 2:
        disc = q[1] * q[1] - 4 * q[2] * q[0]
        return unipoly.is_square_fraction(disc) is None
    return not unipoly.rational_roots(q)


@dataclass(frozen=True)
class ExtElem:
    field: NumberField
    coeffs: UPoly  # reduced, dense ascending, possibly shorter than degree

    def _wrap(self, p: UPoly) -> "ExtElem":
        return ExtElem(self.field, unipoly.rem(p, self.field.modulus))

    def _coerce(self, other) -> "ExtElem":
        if isinstance(other, ExtElem):
            if other.field.modulus != self.field.modulus:
                raise ValueError("elements of different fields")
            return other
        return ExtElem(self.field, unipoly.upoly([Fraction(other)]))

    def __add__(self, other):
        o = self._coerce(other)
        return self._wrap(unipoly.add(self.coeffs, o.coeffs))

    __radd__ = __add__

    def __neg__(self):
        return ExtElem(self.field, unipoly.neg(self.coeffs))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        return self._wrap(unipoly.mul(self.coeffs, o.coeffs))

    __rmul__ = __mul__

    def inverse(self) -> "ExtElem":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        return ExtElem(self.field, unipoly.invert_mod(self.coeffs, self.field.modulus))

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except (ValueError, TypeError):
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash((self.field.modulus, self.coeffs))

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_rational(self) -> bool:
        return unipoly.degree(self.coeffs) <= 0

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def lift(self) -> UPoly:
        return self.coeffs

    def __repr__(self):
        return f"ExtElem({list(self.coeffs)!r} mod {list(self.field.modulus)!r})"


def ext_reduce(value: UPoly, modulus: UPoly) -> ExtElem:
    """Reduce a univariate polynomial modulo an irreducible monic modulus."""
    field = NumberField(unipoly.monic(modulus))
    return field.element(value)
