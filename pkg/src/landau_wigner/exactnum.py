"""Exact complex scalars for coefficient-level algebra.

Every coefficient that enters an identity check is kept in the form
``(re + i*im) * sqrt(rad)`` with ``re``, ``im`` rational and ``rad`` a
squarefree positive integer.  This fragment of the complex field is closed
under everything the star algebra needs (products, sums of like radicals,
inversion, conjugation) and makes the identity tests tolerance-free.  The
radical part only ever shows up in off-diagonal normalizations such as
``1/sqrt(2)``; ordinary coefficients have ``rad == 1``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

Rationalish = Union[int, float, Fraction]
Scalar = Union[int, float, complex, Fraction, "ExactComplex"]

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def split_square(n: int) -> tuple[int, int]:
    """Write n = s**2 * r with r squarefree; return (s, r)."""
    if n <= 0:
        raise ValueError("radical part must be a positive integer")
    s, r = 1, 1
    for p in _SMALL_PRIMES:
        if p * p > n:
            break
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        s *= p ** (e // 2)
        r *= p ** (e % 2)
    # remaining factor of n has no prime divisor <= 37 squared below it
    d = 41
    while d * d <= n:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        s *= d ** (e // 2)
        r *= d ** (e % 2)
        d += 2
    return s, r * n


class ExactComplex:
    """Immutable exact complex number (re + i*im) * sqrt(rad)."""

    __slots__ = ("re", "im", "rad")

    def __init__(self, re: Rationalish = 0, im: Rationalish = 0, rad: int = 1):
        re = Fraction(re)
        im = Fraction(im)
        if re == 0 and im == 0:
            rad = 1
        elif rad != 1:
            s, rad = split_square(rad)
            re *= s
            im *= s
        object.__setattr__(self, "re", re)
        object.__setattr__(self, "im", im)
        object.__setattr__(self, "rad", rad)

    def __setattr__(self, *args):  # pragma: no cover
        raise AttributeError("ExactComplex is immutable")

    @classmethod
    def from_value(cls, value: Scalar) -> "ExactComplex":
        if isinstance(value, ExactComplex):
            return value
        if isinstance(value, complex):
            return cls(Fraction(value.real), Fraction(value.imag))
        return cls(Fraction(value))

    @classmethod
    def sqrt_rational(cls, value: Rationalish) -> "ExactComplex":
        """Exact square root of a nonnegative rational."""
        q = Fraction(value)
        if q < 0:
            raise ValueError("sqrt_rational needs a nonnegative argument")
        if q == 0:
            return cls(0)
        # sqrt(p/q) = sqrt(p*q)/q
        s, r = split_square(q.numerator * q.denominator)
        return cls(Fraction(s, q.denominator), 0, r)

    @property
    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def conjugate(self) -> "ExactComplex":
        return ExactComplex(self.re, -self.im, self.rad)

    def inverse(self) -> "ExactComplex":
        norm = (self.re * self.re + self.im * self.im) * self.rad
        if norm == 0:
            raise ZeroDivisionError("inverse of zero ExactComplex")
        return ExactComplex(self.re / norm, -self.im / norm, self.rad)

    def __add__(self, other: Scalar) -> "ExactComplex":
        other = ExactComplex.from_value(other)
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        if self.rad != other.rad:
            raise ArithmeticError(
                f"cannot add exact scalars with radical parts {self.rad} and {other.rad}"
            )
        return ExactComplex(self.re + other.re, self.im + other.im, self.rad)

    __radd__ = __add__

    def __sub__(self, other: Scalar) -> "ExactComplex":
        return self + (-ExactComplex.from_value(other))

    def __rsub__(self, other: Scalar) -> "ExactComplex":
        return ExactComplex.from_value(other) + (-self)

    def __neg__(self) -> "ExactComplex":
        return ExactComplex(-self.re, -self.im, self.rad)

    def __mul__(self, other: Scalar) -> "ExactComplex":
        other = ExactComplex.from_value(other)
        re = self.re * other.re - self.im * other.im
        im = self.re * other.im + self.im * other.re
        return ExactComplex(re, im, self.rad * other.rad)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "ExactComplex":
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers are supported")
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __truediv__(self, other: Scalar) -> "ExactComplex":
        return self * ExactComplex.from_value(other).inverse()

    def __rtruediv__(self, other: Scalar) -> "ExactComplex":
        return ExactComplex.from_value(other) * self.inverse()

    def __eq__(self, other) -> bool:
        if not isinstance(other, (ExactComplex, int, float, complex, Fraction)):
            return NotImplemented
        other = ExactComplex.from_value(other)
        return self.re == other.re and self.im == other.im and self.rad == other.rad

    def __hash__(self):
        return hash((self.re, self.im, self.rad))

    def __complex__(self) -> complex:
        if self.rad == 1:
            return complex(self.re, self.im)
        root = self.rad ** 0.5
        return complex(float(self.re) * root, float(self.im) * root)

    def __repr__(self):
        body = f"{self.re}" if self.im == 0 else f"({self.re}{'+' if self.im >= 0 else ''}{self.im}j)"
        return body if self.rad == 1 else f"{body}*sqrt({self.rad})"


ZERO = ExactComplex(0)
ONE = ExactComplex(1)
I = ExactComplex(0, 1)


def exact(value: Scalar) -> ExactComplex:
    """Coerce ints, Fractions, floats or complexes to ExactComplex."""
    return ExactComplex.from_value(value)
