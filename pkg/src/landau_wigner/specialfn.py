"""Generalized Laguerre and Hermite polynomials.

Two evaluation paths are kept deliberately separate:

* a numeric path (`laguerre`, `hermite`) built on stable three-term
  recurrences, safe for scalars and numpy arrays;
* an exact symbolic path (`Poly1` with rational coefficients) used for the
  Rodrigues-formula constructions and the coefficientwise identity checks.

A negative integer superscript is resolved through
``L_n^{-k}(x) = (-x)^k (n-k)!/n! L_{n-k}^{k}(x)``; when ``k > n`` the value
is 0, matching the vanishing of those terms in the generating-function
expansion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


# ---------------------------------------------------------------------------
# numeric evaluation


def laguerre(n: int, alpha: int, x):
    """Generalized Laguerre polynomial L_n^alpha(x), integer alpha of any sign."""
    if n < 0:
        raise ValueError(f"Laguerre degree must be nonnegative, got {n}")
    alpha = int(alpha)
    if alpha < 0:
        k = -alpha
        if k > n:
            return 0.0 * x if hasattr(x, "shape") else 0.0
        scale = math.factorial(n - k) / math.factorial(n)
        return (-x) ** k * scale * laguerre(n - k, k, x)
    prev = 1.0 + 0.0 * x
    if n == 0:
        return prev
    cur = 1.0 + alpha - x
    for m in range(1, n):
        prev, cur = cur, ((2 * m + 1 + alpha - x) * cur - (m + alpha) * prev) / (m + 1)
    return cur


def hermite(n: int, x):
    """Hermite polynomial H_n(x) (physicists' convention)."""
    if n < 0:
        raise ValueError(f"Hermite degree must be nonnegative, got {n}")
    prev = 1.0 + 0.0 * x
    if n == 0:
        return prev
    cur = 2.0 * x
    for m in range(1, n):
        prev, cur = cur, 2.0 * x * cur - 2.0 * m * prev
    return cur


# ---------------------------------------------------------------------------
# exact univariate polynomials


@dataclass(frozen=True)
class Poly1:
    """Univariate polynomial with exact rational coefficients, ascending degree."""

    coeffs: tuple[Fraction, ...]

    @classmethod
    def from_coeffs(cls, coeffs: Sequence) -> "Poly1":
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        return cls(tuple(cs))

    @classmethod
    def monomial(cls, degree: int, coeff=1) -> "Poly1":
        return cls.from_coeffs([0] * degree + [coeff])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __add__(self, other: "Poly1") -> "Poly1":
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [Fraction(0)] * (n - len(self.coeffs))
        b = list(other.coeffs) + [Fraction(0)] * (n - len(other.coeffs))
        return Poly1.from_coeffs([x + y for x, y in zip(a, b)])

    def __sub__(self, other: "Poly1") -> "Poly1":
        return self + other.scale(-1)

    def __mul__(self, other: "Poly1") -> "Poly1":
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1 or 1)
        for i, ci in enumerate(self.coeffs):
            for j, cj in enumerate(other.coeffs):
                out[i + j] += ci * cj
        return Poly1.from_coeffs(out)

    def scale(self, factor) -> "Poly1":
        f = Fraction(factor)
        return Poly1.from_coeffs([f * c for c in self.coeffs])

    def deriv(self) -> "Poly1":
        return Poly1.from_coeffs([k * c for k, c in enumerate(self.coeffs)][1:])

    def shift_down(self, power: int) -> "Poly1":
        """Exact division by x**power; raises if not divisible."""
        if any(c != 0 for c in self.coeffs[:power]):
            raise ArithmeticError("polynomial not divisible by requested power of x")
        return Poly1.from_coeffs(self.coeffs[power:])

    def compose_scale(self, factor) -> "Poly1":
        """p(factor * x)."""
        f = Fraction(factor)
        return Poly1.from_coeffs([c * f**k for k, c in enumerate(self.coeffs)])

    def __call__(self, x):
        acc = 0.0 * x if hasattr(x, "shape") else 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + float(c)
        return acc


ZERO_POLY = Poly1(())
ONE_POLY = Poly1.from_coeffs([1])


def laguerre_poly(n: int, alpha: int = 0) -> Poly1:
    """Exact L_n^alpha as Poly1, alpha >= 0, via the finite series."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    if alpha < 0:
        raise ValueError("exact path requires alpha >= 0; use laguerre() for negative superscripts")
    coeffs = [
        Fraction((-1) ** k * math.comb(n + alpha, n - k), math.factorial(k))
        for k in range(n + 1)
    ]
    return Poly1.from_coeffs(coeffs)


def hermite_poly(n: int) -> Poly1:
    if n < 0:
        raise ValueError("degree must be nonnegative")
    prev, cur = ONE_POLY, Poly1.from_coeffs([0, 2])
    if n == 0:
        return prev
    for m in range(1, n):
        prev, cur = cur, Poly1.from_coeffs([0, 2]) * cur - prev.scale(2 * m)
    return cur


def laguerre_poly_rodrigues(n: int, alpha: int = 0) -> Poly1:
    """L_n^alpha from the Rodrigues construction e^x/n! x^{-alpha} (d/dx)^n (x^{n+alpha} e^{-x}).

    The derivative acts on P(x) e^{-x} as P -> P' - P, so the whole
    construction stays inside exact polynomial arithmetic.
    """
    if n < 0 or alpha < 0:
        raise ValueError("Rodrigues construction needs n >= 0 and alpha >= 0")
    p = Poly1.monomial(n + alpha)
    for _ in range(n):
        p = p.deriv() - p
    return p.shift_down(alpha).scale(Fraction(1, math.factorial(n)))


def hermite_poly_rodrigues(n: int) -> Poly1:
    """H_n from (-1)^n e^{x^2} (d/dx)^n e^{-x^2}; derivative acts as P -> P' - 2xP."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    p = ONE_POLY
    two_x = Poly1.from_coeffs([0, 2])
    for _ in range(n):
        p = p.deriv() - two_x * p
    return p.scale((-1) ** n)


def ladder_diagonal_poly(n: int) -> Poly1:
    """The polynomial (1/n!) e^u (1 - d/du)^n (u^n e^{-u}) produced by the
    n-fold creation/annihilation sandwich of the ground-state Gaussian.

    Coefficientwise it equals (-1)^n L_n(2u).
    """
    p = Poly1.monomial(n)
    for _ in range(n):
        p = p.scale(2) - p.deriv()
    return p.scale(Fraction(1, math.factorial(n)))


def verify_rodrigues_shift_identity(n: int) -> bool:
    """Check (1 - d/dx)^n (x^n e^{-x}) == (-1)^n e^x (d/dx)^n (x^n e^{-2x})
    by exact coefficient comparison of the polynomial parts.
    """
    if n < 0:
        raise ValueError("degree must be nonnegative")
    if n > 20:
        raise ValueError("symbolic budget is n <= 20")
    left = Poly1.monomial(n)
    for _ in range(n):
        left = left.scale(2) - left.deriv()  # (1 - d/dx) on P e^{-x}
    right = Poly1.monomial(n)
    for _ in range(n):
        right = right.deriv() - right.scale(2)  # d/dx on P e^{-2x}
    return left == right.scale((-1) ** n)


def laguerre_double_argument_residual(n: int, x: float) -> float:
    """|L_n(2x) - sum_j (-x)^j/j! L_{n-j}^{j}(x)|: the finite split of the
    double-argument Laguerre value across shifted superscripts.
    """
    if n < 0:
        raise ValueError("degree must be nonnegative")
    total = 0.0
    for j in range(n + 1):
        total += (-x) ** j / math.factorial(j) * laguerre(n - j, j, x)
    return abs(laguerre(n, 0, 2 * x) - total)
