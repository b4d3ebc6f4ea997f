from fractions import Fraction

import pytest

from landau_wigner.exactnum import ExactComplex, exact, split_square


def test_split_square():
    assert split_square(1) == (1, 1)
    assert split_square(8) == (2, 2)
    assert split_square(720 * 720) == (720, 1)
    assert split_square(2 * 3 * 5 * 49) == (7, 30)
    with pytest.raises(ValueError):
        split_square(0)


def test_basic_arithmetic():
    a = ExactComplex(Fraction(1, 2), Fraction(-1, 3))
    b = ExactComplex(2, 1)
    assert a + b == ExactComplex(Fraction(5, 2), Fraction(2, 3))
    assert a * b == ExactComplex(Fraction(4, 3), Fraction(-1, 6))
    assert -a + a == ExactComplex(0)
    assert (a / b) * b == a
    assert a.conjugate().conjugate() == a


def test_radical_canonicalization():
    r = ExactComplex(1, 0, 8)  # sqrt(8) = 2 sqrt(2)
    assert r == ExactComplex(2, 0, 2)
    assert r * r == ExactComplex(8)
    half_rt2 = ExactComplex.sqrt_rational(Fraction(1, 2))
    assert half_rt2 == ExactComplex(Fraction(1, 2), 0, 2)
    assert half_rt2 * half_rt2 == ExactComplex(Fraction(1, 2))


def test_sqrt_rational_and_inverse():
    x = ExactComplex.sqrt_rational(Fraction(9, 4))
    assert x == ExactComplex(Fraction(3, 2))
    y = ExactComplex.sqrt_rational(12)
    assert y == ExactComplex(2, 0, 3)
    assert (1 / y) * y == ExactComplex(1)
    with pytest.raises(ValueError):
        ExactComplex.sqrt_rational(-1)


def test_mismatched_radicals_raise():
    with pytest.raises(ArithmeticError):
        ExactComplex(1, 0, 2) + ExactComplex(1, 0, 3)
    # zero is compatible with anything
    assert ExactComplex(0) + ExactComplex(1, 0, 3) == ExactComplex(1, 0, 3)


def test_powers_and_complex_conversion():
    i = ExactComplex(0, 1)
    assert i**2 == ExactComplex(-1)
    assert i**0 == ExactComplex(1)
    z = complex(ExactComplex(Fraction(1, 2), 0, 2))
    assert abs(z - 0.5 * 2**0.5) < 1e-15
    assert exact(0.25) == ExactComplex(Fraction(1, 4))
    assert exact(1 + 2j) == ExactComplex(1, 2)
