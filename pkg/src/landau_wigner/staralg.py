"""Abstract ladder star algebra with a vacuum projector.

Elements are exact linear combinations of normal-form words.  A word is
either free, ``abar^ma bbar^mb a^pa b^pb`` (creators left of annihilators),
or a projector word ``abar^ma bbar^mb P a^pa b^pb`` where ``P`` is the
vacuum projector.  Rewriting to normal form uses

    a abar = abar a + 1      (same for the b sector; sectors commute)
    a P = 0 = P abar         (and b P = 0 = P bbar)
    P P = P

which terminates and is confluent, so the algebra reproduces the ladder,
number and projection identities exactly and parameter-free.  Coefficients
are exact; the only irrational ones are off-diagonal normalizations of the
form 1/sqrt(integer), which the scalar class carries as radicals.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, NamedTuple

from .exactnum import ExactComplex, Scalar, exact

GENERATORS = ("a", "abar", "b", "bbar", "proj")


class Word(NamedTuple):
    """Normal-form word; proj marks the vacuum projector between the halves."""

    ca: int  # abar exponent
    cb: int  # bbar exponent
    proj: bool
    aa: int  # a exponent
    ab: int  # b exponent


IDENTITY_WORD = Word(0, 0, False, 0, 0)
PROJ_WORD = Word(0, 0, True, 0, 0)


class LadderElement:
    """Exact linear combination of normal-form words."""

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        clean: dict[Word, ExactComplex] = {}
        for word, coeff in (terms or {}).items():
            c = exact(coeff)
            if c.is_zero:
                continue
            acc = clean.get(word)
            c = c if acc is None else acc + c
            clean[word] = c
        object.__setattr__(self, "_terms", {w: c for w, c in clean.items() if not c.is_zero})

    def __setattr__(self, *args):  # pragma: no cover
        raise AttributeError("LadderElement is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "LadderElement":
        return cls()

    @classmethod
    def scalar(cls, value: Scalar) -> "LadderElement":
        return cls({IDENTITY_WORD: value})

    @classmethod
    def generator(cls, name: str) -> "LadderElement":
        if name == "a":
            return cls({Word(0, 0, False, 1, 0): 1})
        if name == "b":
            return cls({Word(0, 0, False, 0, 1): 1})
        if name == "abar":
            return cls({Word(1, 0, False, 0, 0): 1})
        if name == "bbar":
            return cls({Word(0, 1, False, 0, 0): 1})
        if name == "proj":
            return cls({PROJ_WORD: 1})
        raise ValueError(f"unknown generator {name!r}; expected one of {GENERATORS}")

    # -- inspection ----------------------------------------------------------

    @property
    def terms(self) -> dict[Word, ExactComplex]:
        return dict(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    # -- linear structure ----------------------------------------------------

    def __add__(self, other: "LadderElement") -> "LadderElement":
        out = dict(self._terms)
        for w, c in other._terms.items():
            out[w] = out.get(w, ExactComplex(0)) + c
        return LadderElement(out)

    def __sub__(self, other: "LadderElement") -> "LadderElement":
        return self + other.scale(-1)

    def __neg__(self) -> "LadderElement":
        return self.scale(-1)

    def scale(self, factor: Scalar) -> "LadderElement":
        f = exact(factor)
        return LadderElement({w: c * f for w, c in self._terms.items()})

    def conjugate(self) -> "LadderElement":
        """Complex conjugation: swaps creators and annihilators, reverses
        words, fixes the projector."""
        out = {}
        for w, c in self._terms.items():
            out[Word(w.aa, w.ab, w.proj, w.ca, w.cb)] = c.conjugate()
        return LadderElement(out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LadderElement):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self):
        if self.is_zero:
            return "LadderElement(0)"
        bits = []
        for w, c in sorted(self._terms.items()):
            parts = []
            for sym, e in (("abar", w.ca), ("bbar", w.cb)):
                if e:
                    parts.append(f"{sym}^{e}" if e > 1 else sym)
            if w.proj:
                parts.append("P")
            for sym, e in (("a", w.aa), ("b", w.ab)):
                if e:
                    parts.append(f"{sym}^{e}" if e > 1 else sym)
            mono = " ".join(parts) or "1"
            bits.append(f"{c!r} {mono}")
        return "LadderElement(" + " + ".join(bits) + ")"


def _cross_coeff(p: int, m: int, k: int) -> int:
    """Coefficient of abar^{m-k} a^{p-k} in the reordering of a^p abar^m."""
    return math.factorial(k) * math.comb(p, k) * math.comb(m, k)


def _word_star(w1: Word, w2: Word) -> dict[Word, int]:
    """Normal form of the concatenation w1 w2, as word -> integer coefficient."""
    out: dict[Word, int] = {}
    if w1.proj and w2.proj:
        # P a^p b^q abar^m bbar^n P: only the full contraction survives
        if w1.aa == w2.ca and w1.ab == w2.cb:
            coeff = math.factorial(w1.aa) * math.factorial(w1.ab)
            out[Word(w1.ca, w1.cb, True, w2.aa, w2.ab)] = coeff
        return out
    if w1.proj:
        # P a^p ... abar^m ...: P abar kills all but the full contraction on the left
        ka, kb = w2.ca, w2.cb
        if w1.aa < ka or w1.ab < kb:
            return out
        coeff = _cross_coeff(w1.aa, ka, ka) * _cross_coeff(w1.ab, kb, kb)
        out[Word(w1.ca, w1.cb, True, w1.aa - ka + w2.aa, w1.ab - kb + w2.ab)] = coeff
        return out
    if w2.proj:
        ka, kb = w1.aa, w1.ab
        if w2.ca < ka or w2.cb < kb:
            return out
        coeff = _cross_coeff(ka, w2.ca, ka) * _cross_coeff(kb, w2.cb, kb)
        out[Word(w1.ca + w2.ca - ka, w1.cb + w2.cb - kb, True, w2.aa, w2.ab)] = coeff
        return out
    for ka in range(min(w1.aa, w2.ca) + 1):
        ca_coeff = _cross_coeff(w1.aa, w2.ca, ka)
        for kb in range(min(w1.ab, w2.cb) + 1):
            coeff = ca_coeff * _cross_coeff(w1.ab, w2.cb, kb)
            word = Word(
                w1.ca + w2.ca - ka,
                w1.cb + w2.cb - kb,
                False,
                w1.aa - ka + w2.aa,
                w1.ab - kb + w2.ab,
            )
            out[word] = out.get(word, 0) + coeff
    return out


def star_product(e1: LadderElement, e2: LadderElement) -> LadderElement:
    """Star product: concatenate words and rewrite to normal form."""
    out: dict[Word, ExactComplex] = {}
    for w1, c1 in e1.terms.items():
        for w2, c2 in e2.terms.items():
            c12 = c1 * c2
            for word, n in _word_star(w1, w2).items():
                out[word] = out.get(word, ExactComplex(0)) + c12 * n
    return LadderElement(out)


def normalize(item: "LadderElement | Iterable[str]") -> LadderElement:
    """Normal form of an element or of a raw generator sequence.

    A sequence like ``("a", "abar", "proj")`` is interpreted as the star
    product of the generators in order and fully rewritten; elements are
    already normal by construction and pass through unchanged.
    """
    if isinstance(item, LadderElement):
        return item
    out = LadderElement.scalar(1)
    for name in item:
        out = star_product(out, LadderElement.generator(name))
    return out


def number_a() -> LadderElement:
    return LadderElement({Word(1, 0, False, 1, 0): 1})


def number_b() -> LadderElement:
    return LadderElement({Word(0, 1, False, 0, 1): 1})


def wigner_element(n1: int, n2: int, l1: int, l2: int) -> LadderElement:
    """Normalized projector word abar^n1 bbar^l1 P a^n2 b^l2 / sqrt(n1! n2! l1! l2!).

    On the diagonal the normalization reduces to 1/(n! l!).
    """
    for v in (n1, n2, l1, l2):
        if v < 0:
            raise ValueError("indices must be nonnegative")
    norm = ExactComplex(1) / ExactComplex.sqrt_rational(
        Fraction(
            math.factorial(n1) * math.factorial(n2) * math.factorial(l1) * math.factorial(l2)
        )
    )
    return LadderElement({Word(n1, l1, True, n2, l2): norm})


def diagonal_wigner_element(n: int, l: int) -> LadderElement:
    return wigner_element(n, n, l, l)


def verify_ladder(n: int, l: int) -> bool:
    """Ladder structure around the diagonal element with indices (n, l):
    a W_nl = W_{n-1,l} a,  b W_nl = W_{n,l-1} b,
    abar W_nl = W_{n+1,l} abar,  bbar W_nl = W_{n,l+1} bbar,
    with W carrying a negative index meaning 0.
    """
    if n < 0 or l < 0:
        raise ValueError("indices must be nonnegative")
    w = diagonal_wigner_element(n, l)
    a, abar = LadderElement.generator("a"), LadderElement.generator("abar")
    b, bbar = LadderElement.generator("b"), LadderElement.generator("bbar")
    down_a = diagonal_wigner_element(n - 1, l) if n else LadderElement.zero()
    down_b = diagonal_wigner_element(n, l - 1) if l else LadderElement.zero()
    checks = (
        star_product(a, w) == star_product(down_a, a),
        star_product(b, w) == star_product(down_b, b),
        star_product(abar, w) == star_product(diagonal_wigner_element(n + 1, l), abar),
        star_product(bbar, w) == star_product(diagonal_wigner_element(n, l + 1), bbar),
    )
    return all(checks)


class EigenResult(NamedTuple):
    """Star eigenvalues in units of (hbar*omega) and hbar respectively."""

    energy: Fraction
    angular_momentum: Fraction


class ConsistencyError(RuntimeError):
    """An algebraic identity the construction guarantees failed to hold."""


def eigen_check(n: int, l: int) -> EigenResult:
    """Check the two-sided star eigenvalue equations for the diagonal element.

    Applies H = N_a + 1/2 (the Hamiltonian in units of hbar*omega) and
    J = N_b - N_a (angular momentum in units of hbar) from both sides and
    asserts proportionality; returns (n + 1/2, l - n).
    """
    if n < 0 or l < 0:
        raise ValueError("indices must be nonnegative")
    w = diagonal_wigner_element(n, l)
    ham = number_a() + LadderElement.scalar(Fraction(1, 2))
    ang = number_b() - number_a()
    energy = Fraction(2 * n + 1, 2)
    angmom = Fraction(l - n)
    for op, eig in ((ham, energy), (ang, angmom)):
        left = star_product(op, w)
        right = star_product(w, op)
        expected = w.scale(eig)
        if left != expected or right != expected:
            raise ConsistencyError(
                f"two-sided eigen equation failed for (n, l) = ({n}, {l})"
            )
    return EigenResult(energy, angmom)


def product_of_shifted_numbers(lo: int, hi: int) -> LadderElement:
    """(N_a + lo) * (N_a + lo + 1) * ... * (N_a + hi), star products throughout."""
    out = LadderElement.scalar(1)
    for j in range(lo, hi + 1):
        out = star_product(out, number_a() + LadderElement.scalar(j))
    return out
