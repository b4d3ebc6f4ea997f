"""Polynomials in the canonical coordinates (q1, q2, p1, p2).

Coefficients are exact (`ExactComplex`), so the terminating star-product
series used by the gauge-transformation machinery stays tolerance-free.
Keys are exponent 4-tuples ordered (q1, q2, p1, p2).
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterator, Mapping

from .exactnum import ExactComplex, Scalar, exact

QPKey = tuple[int, int, int, int]
AXES = ("q1", "q2", "p1", "p2")


class QPPoly:
    """Immutable polynomial over (q1, q2, p1, p2) with exact coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[QPKey, Scalar] | None = None):
        clean: dict[QPKey, ExactComplex] = {}
        for key, coeff in (terms or {}).items():
            c = exact(coeff)
            if not c.is_zero:
                key = tuple(int(e) for e in key)
                if len(key) != 4 or any(e < 0 for e in key):
                    raise ValueError(f"bad exponent key {key}")
                clean[key] = clean.get(key, ExactComplex(0)) + c
        object.__setattr__(self, "_terms", {k: v for k, v in clean.items() if not v.is_zero})

    def __setattr__(self, *args):  # pragma: no cover
        raise AttributeError("QPPoly is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "QPPoly":
        return cls()

    @classmethod
    def constant(cls, value: Scalar) -> "QPPoly":
        return cls({(0, 0, 0, 0): value})

    @classmethod
    def coordinate(cls, axis: str) -> "QPPoly":
        key = [0, 0, 0, 0]
        key[AXES.index(axis)] = 1
        return cls({tuple(key): 1})

    # -- inspection --------------------------------------------------------

    @property
    def terms(self) -> dict[QPKey, ExactComplex]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[QPKey, ExactComplex]]:
        return iter(sorted(self._terms.items()))

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        return max((sum(k) for k in self._terms), default=0)

    def momentum_degree(self) -> int:
        return max((k[2] + k[3] for k in self._terms), default=0)

    def depends_only_on_q(self) -> bool:
        return all(k[2] == 0 and k[3] == 0 for k in self._terms)

    def is_real(self) -> bool:
        return all(c.im == 0 for c in self._terms.values())

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "QPPoly") -> "QPPoly":
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, ExactComplex(0)) + c
        return QPPoly(out)

    def __sub__(self, other: "QPPoly") -> "QPPoly":
        return self + other.scale(-1)

    def __neg__(self) -> "QPPoly":
        return self.scale(-1)

    def __mul__(self, other: "QPPoly") -> "QPPoly":
        out: dict[QPKey, ExactComplex] = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                key = tuple(e1 + e2 for e1, e2 in zip(k1, k2))
                prod = c1 * c2
                out[key] = out.get(key, ExactComplex(0)) + prod
        return QPPoly(out)

    def scale(self, factor: Scalar) -> "QPPoly":
        f = exact(factor)
        return QPPoly({k: c * f for k, c in self._terms.items()})

    def conjugate(self) -> "QPPoly":
        return QPPoly({k: c.conjugate() for k, c in self._terms.items()})

    def deriv(self, axis: str) -> "QPPoly":
        i = AXES.index(axis)
        out: dict[QPKey, ExactComplex] = {}
        for k, c in self._terms.items():
            if k[i] == 0:
                continue
            nk = list(k)
            nk[i] -= 1
            out[tuple(nk)] = out.get(tuple(nk), ExactComplex(0)) + c * k[i]
        return QPPoly(out)

    def pow(self, n: int) -> "QPPoly":
        if n < 0:
            raise ValueError("negative power")
        out = QPPoly.constant(1)
        for _ in range(n):
            out = out * self
        return out

    def compose_linear(self, matrix) -> "QPPoly":
        """Substitute y_i -> sum_j matrix[i][j] y_j (matrix entries exact-coercible)."""
        images = []
        for i in range(4):
            row: dict[QPKey, Scalar] = {}
            for j in range(4):
                key = [0, 0, 0, 0]
                key[j] = 1
                row[tuple(key)] = matrix[i][j]
            images.append(QPPoly(row))
        out = QPPoly.zero()
        for k, c in self._terms.items():
            term = QPPoly.constant(c)
            for i, e in enumerate(k):
                term = term * images[i].pow(e)
            out = out + term
        return out

    # -- evaluation / comparison -------------------------------------------

    def __call__(self, q1, q2, p1, p2):
        acc = 0.0j
        for (e1, e2, e3, e4), c in self._terms.items():
            acc = acc + complex(c) * q1**e1 * q2**e2 * p1**e3 * p2**e4
        return acc

    def __eq__(self, other) -> bool:
        if not isinstance(other, QPPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def pretty(self) -> str:
        if self.is_zero:
            return "0"
        bits = []
        for key, c in sorted(self._terms.items()):
            mon = "*".join(f"{AXES[i]}^{e}" if e > 1 else AXES[i] for i, e in enumerate(key) if e)
            bits.append(f"{c!r}" + (f"*{mon}" if mon else ""))
        return " + ".join(bits)

    def __repr__(self):
        return f"QPPoly({self.pretty()})"


_TOKEN = re.compile(r"\s*([+-]|\*\*|\^|\*|[0-9]*\.?[0-9]+(?:[eE][+-]?[0-9]+)?|q1|q2|p1|p2|/)")


def parse_qp_poly(text: str) -> QPPoly:
    """Parse strings like ``0.5*q1*q2 - q1^2 + 2*p1`` into a QPPoly.

    Grammar: sum of terms; each term a product of numeric literals and
    coordinates, with optional integer powers via ``^`` or ``**`` and
    division by numeric literals.
    """
    pos, n = 0, len(text)
    result = QPPoly.zero()
    sign = 1
    factors: list[QPPoly] = []
    seen_any = False
    expect_factor = False

    def flush():
        nonlocal result, factors, sign
        if factors:
            term = QPPoly.constant(1)
            for f in factors:
                term = term * f
            result = result + term.scale(sign)
        factors, sign = [], 1

    while pos < n:
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"cannot parse polynomial near {text[pos:pos+12]!r}")
        tok = m.group(1)
        pos = m.end()
        if tok in "+-":
            if factors:
                flush()
            sign = sign if tok == "+" else -sign
            expect_factor = True
        elif tok == "*":
            expect_factor = True
            continue
        elif tok in ("^", "**", "/"):
            mm = _TOKEN.match(text, pos)
            if not mm:
                raise ValueError(f"dangling {tok!r} in polynomial spec")
            arg = mm.group(1)
            pos = mm.end()
            if not factors:
                raise ValueError(f"{tok!r} with no left factor")
            if tok == "/":
                factors[-1] = factors[-1].scale(Fraction(1) / Fraction(arg))
            else:
                factors[-1] = factors[-1].pow(int(arg))
        elif tok in AXES:
            factors.append(QPPoly.coordinate(tok))
            seen_any = True
            expect_factor = False
        else:
            factors.append(QPPoly.constant(Fraction(tok)))
            seen_any = True
            expect_factor = False
    if expect_factor:
        raise ValueError("polynomial spec ends with a dangling operator")
    flush()
    if not seen_any:
        raise ValueError("empty polynomial spec")
    return result
