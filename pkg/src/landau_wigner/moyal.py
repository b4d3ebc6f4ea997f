"""Star products on phase space.

The canonical internal representation is the dimensionless ladder system
(a, abar, b, bbar), where the star product is

    f * g = sum_{j,k,r,s} (1/2)^{j+k} (-1/2)^{r+s} / (j! k! r! s!)
            (d_a^j d_b^k d_abar^r d_bbar^s f) (d_abar^j d_bbar^k d_a^r d_b^s g)

with unit coefficients, so no physical parameter enters the exact algebra.
The canonical-coordinate form of the product (the exponential of the Poisson
bidifferential with weight i*hbar/2) is implemented as a coordinate-changed
wrapper used by the truncated numeric series.

Exact products are closed on `GaussPolyFn` when at least one factor is a
pure polynomial (the series terminates) or both factors are pure Gaussian
exponentials (closed form).  Everything else goes through `star_numeric`.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Iterator, Mapping, NamedTuple, Optional

import numpy as np

from .exactnum import ExactComplex, Scalar, exact
from .phasespace import DEFAULT_PARAMS, Params, PhasePoint
from .qpoly import QPPoly

Key = tuple[int, int, int, int]  # exponents of (a, abar, b, bbar)
VARS = ("a", "abar", "b", "bbar")

DEFAULT_NUMERIC_ORDER = 24


class StarClassError(ValueError):
    """The operand pair is outside the exactly star-composable class."""


class CapabilityError(ValueError):
    """A numeric operand cannot supply derivatives of the requested order."""


class GaussPolyFn:
    """Polynomial in (a, abar, b, bbar) times exp(-sa*a*abar - sb*b*bbar).

    Immutable.  The public constructor and `gauss_s` expose a single matched
    exponent s multiplying (a*abar + b*bbar); sector-split exponents exist
    internally for intermediate Gaussian products.
    """

    __slots__ = ("_terms", "_sa", "_sb")

    def __init__(self, terms: Mapping[Key, Scalar] | None = None, gauss_s: Scalar = 0):
        s = Fraction(gauss_s)
        self._init(terms, s, s)

    def _init(self, terms, sa: Fraction, sb: Fraction):
        clean: dict[Key, ExactComplex] = {}
        for key, coeff in (terms or {}).items():
            c = exact(coeff)
            if c.is_zero:
                continue
            key = tuple(int(e) for e in key)
            if len(key) != 4 or any(e < 0 for e in key):
                raise ValueError(f"bad monomial key {key}")
            acc = clean.get(key)
            c = c if acc is None else acc + c
            clean[key] = c
        clean = {k: v for k, v in clean.items() if not v.is_zero}
        if not clean:
            sa = sb = Fraction(0)
        object.__setattr__(self, "_terms", clean)
        object.__setattr__(self, "_sa", sa)
        object.__setattr__(self, "_sb", sb)

    @classmethod
    def _sector(cls, terms, sa, sb) -> "GaussPolyFn":
        out = cls.__new__(cls)
        out._init(terms, Fraction(sa), Fraction(sb))
        return out

    def __setattr__(self, *args):  # pragma: no cover
        raise AttributeError("GaussPolyFn is immutable")

    # -- constructors --------------------------------------------------

    @classmethod
    def zero(cls) -> "GaussPolyFn":
        return cls()

    @classmethod
    def constant(cls, value: Scalar) -> "GaussPolyFn":
        return cls({(0, 0, 0, 0): value})

    @classmethod
    def monomial(cls, key: Key, coeff: Scalar = 1) -> "GaussPolyFn":
        return cls({key: coeff})

    @classmethod
    def gaussian(cls, s: Scalar, coeff: Scalar = 1) -> "GaussPolyFn":
        """coeff * exp(-s*(a*abar + b*bbar))."""
        return cls({(0, 0, 0, 0): coeff}, gauss_s=s)

    # -- inspection ------------------------------------------------------

    @property
    def terms(self) -> dict[Key, ExactComplex]:
        return dict(self._terms)

    @property
    def gauss_s(self) -> Fraction:
        if self._sa != self._sb:
            raise StarClassError("sector Gaussian exponents differ; no joint gauss_s")
        return self._sa

    @property
    def sector_gauss(self) -> tuple[Fraction, Fraction]:
        return self._sa, self._sb

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_polynomial(self) -> bool:
        return self._sa == 0 and self._sb == 0

    @property
    def is_exponential(self) -> bool:
        """Pure exponential: constant polynomial part (possibly times a scalar)."""
        return len(self._terms) <= 1 and all(k == (0, 0, 0, 0) for k in self._terms)

    def max_exponent(self, var: str) -> int:
        i = VARS.index(var)
        return max((k[i] for k in self._terms), default=0)

    def degree(self) -> int:
        return max((sum(k) for k in self._terms), default=0)

    def items(self) -> Iterator[tuple[Key, ExactComplex]]:
        return iter(sorted(self._terms.items()))

    # -- pointwise algebra -------------------------------------------------

    def __add__(self, other: "GaussPolyFn") -> "GaussPolyFn":
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        if (self._sa, self._sb) != (other._sa, other._sb):
            raise StarClassError("cannot add functions with different Gaussian factors")
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, ExactComplex(0)) + c
        return GaussPolyFn._sector(out, self._sa, self._sb)

    def __sub__(self, other: "GaussPolyFn") -> "GaussPolyFn":
        return self + other.scale(-1)

    def __neg__(self) -> "GaussPolyFn":
        return self.scale(-1)

    def scale(self, factor: Scalar) -> "GaussPolyFn":
        f = exact(factor)
        return GaussPolyFn._sector({k: c * f for k, c in self._terms.items()}, self._sa, self._sb)

    def __mul__(self, other: "GaussPolyFn") -> "GaussPolyFn":
        """Pointwise product (always defined; Gaussian exponents add)."""
        out: dict[Key, ExactComplex] = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                key = tuple(e1 + e2 for e1, e2 in zip(k1, k2))
                out[key] = out.get(key, ExactComplex(0)) + c1 * c2
        return GaussPolyFn._sector(out, self._sa + other._sa, self._sb + other._sb)

    def conjugate(self) -> "GaussPolyFn":
        out = {}
        for (i, j, k, l), c in self._terms.items():
            out[(j, i, l, k)] = c.conjugate()
        return GaussPolyFn._sector(out, self._sa, self._sb)

    def deriv(self, var: str) -> "GaussPolyFn":
        """Partial derivative; the Gaussian factor contributes its logarithmic term."""
        i = VARS.index(var)
        out: dict[Key, ExactComplex] = {}
        for k, c in self._terms.items():
            if k[i] > 0:
                nk = list(k)
                nk[i] -= 1
                nk = tuple(nk)
                out[nk] = out.get(nk, ExactComplex(0)) + c * k[i]
        s = self._sa if var in ("a", "abar") else self._sb
        if s != 0:
            partner = {"a": 1, "abar": 0, "b": 3, "bbar": 2}[var]
            for k, c in self._terms.items():
                nk = list(k)
                nk[partner] += 1
                nk = tuple(nk)
                out[nk] = out.get(nk, ExactComplex(0)) - c * s
        return GaussPolyFn._sector(out, self._sa, self._sb)

    # -- evaluation ---------------------------------------------------------

    def evaluate(self, a, b, abar=None, bbar=None):
        """Value at ladder coordinates; abar/bbar default to complex conjugates.

        Independent abar, bbar values are allowed (analytic continuation),
        which is what the scaling-symmetry checks need.
        """
        if abar is None:
            abar = np.conjugate(a)
        if bbar is None:
            bbar = np.conjugate(b)
        acc = 0.0j
        for (i, j, k, l), c in self._terms.items():
            acc = acc + complex(c) * a**i * abar**j * b**k * bbar**l
        if self._sa != 0 or self._sb != 0:
            acc = acc * np.exp(-float(self._sa) * a * abar - float(self._sb) * b * bbar)
        return acc

    def evaluate_qp(self, pt_or_q1, q2=None, p1=None, p2=None, params: Params = DEFAULT_PARAMS):
        if q2 is None:
            q1, q2, p1, p2 = pt_or_q1
        else:
            q1 = pt_or_q1
        k, d = params.kappa, 2.0 * params.kappa * params.gamma
        a = ((p1 + k * q2) + 1j * (p2 - k * q1)) / d
        b = ((k * q2 - p1) + 1j * (p2 + k * q1)) / d
        return self.evaluate(a, b)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GaussPolyFn):
            return NotImplemented
        return self._terms == other._terms and (self._sa, self._sb) == (other._sa, other._sb)

    def __hash__(self):
        return hash((frozenset(self._terms.items()), self._sa, self._sb))

    def __repr__(self):
        if self.is_zero:
            return "GaussPolyFn(0)"
        bits = []
        for key, c in self.items():
            mon = "*".join(f"{VARS[i]}^{e}" if e > 1 else VARS[i] for i, e in enumerate(key) if e)
            bits.append(f"{c!r}" + (f"*{mon}" if mon else ""))
        body = " + ".join(bits)
        if self._sa or self._sb:
            body += f" | exp(-{self._sa}*a*abar - {self._sb}*b*bbar)"
        return f"GaussPolyFn({body})"


def ladder(var: str) -> GaussPolyFn:
    """The coordinate function a, abar, b or bbar."""
    key = [0, 0, 0, 0]
    key[VARS.index(var)] = 1
    return GaussPolyFn.monomial(tuple(key))


# ---------------------------------------------------------------------------
# exact star product


def _series_coeff(j: int, k: int, r: int, s: int) -> ExactComplex:
    num = Fraction(1, 2) ** (j + k) * Fraction(-1, 2) ** (r + s)
    den = math.factorial(j) * math.factorial(k) * math.factorial(r) * math.factorial(s)
    return ExactComplex(num / den)


def _derivative_table(f: GaussPolyFn, order_vars: tuple[str, str, str, str], bounds):
    """Tables of d^{(j,k,r,s)} f where the derivative variables, in order,
    are order_vars and the orders are bounded componentwise by `bounds`."""
    table: dict[Key, GaussPolyFn] = {(0, 0, 0, 0): f}
    for axis in range(4):
        var = order_vars[axis]
        current = dict(table)
        for key, fn in current.items():
            d = fn
            for step in range(1, bounds[axis] + 1):
                d = d.deriv(var)
                if d.is_zero:
                    break
                nk = list(key)
                nk[axis] = step
                table[tuple(nk)] = d
    return table


def star_exact(f: GaussPolyFn, g: GaussPolyFn) -> GaussPolyFn:
    """Exact star product on the composable class.

    Supported pairs: at least one factor a pure polynomial (terminating
    bidifferential series), or two pure exponentials (closed Gaussian form).
    Anything else raises StarClassError; fall back to `star_numeric`.
    """
    if f.is_zero or g.is_zero:
        return GaussPolyFn.zero()
    if f.is_polynomial or g.is_polynomial:
        if f.is_polynomial:
            bounds = (
                f.max_exponent("a"),
                f.max_exponent("b"),
                f.max_exponent("abar"),
                f.max_exponent("bbar"),
            )
        else:
            bounds = (
                g.max_exponent("abar"),
                g.max_exponent("bbar"),
                g.max_exponent("a"),
                g.max_exponent("b"),
            )
        left = _derivative_table(f, ("a", "b", "abar", "bbar"), bounds)
        right = _derivative_table(g, ("abar", "bbar", "a", "b"), bounds)
        total = GaussPolyFn.zero()
        for (j, k, r, s), df in left.items():
            dg = right.get((j, k, r, s))
            if dg is None or dg.is_zero:
                continue
            total = total + (df * dg).scale(_series_coeff(j, k, r, s))
        return total
    if f.is_exponential and g.is_exponential:
        return _star_gaussians(f, g)
    raise StarClassError(
        "star_exact needs a pure polynomial factor or two pure exponentials"
    )


def _star_gaussians(f: GaussPolyFn, g: GaussPolyFn) -> GaussPolyFn:
    """Closed form per sector: exp(-t*u) * exp(-s*u) with u = a*abar gives
    (1 + t*s/4)^{-1} exp(-(t+s)/(1+t*s/4) * u), independently in each sector."""
    cf = f._terms.get((0, 0, 0, 0), ExactComplex(0))
    cg = g._terms.get((0, 0, 0, 0), ExactComplex(0))
    coeff = cf * cg
    exponents = []
    for t, s in ((f._sa, g._sa), (f._sb, g._sb)):
        den = 1 + Fraction(t * s, 4)
        if den == 0:
            raise StarClassError("singular Gaussian pair (1 + t*s/4 = 0)")
        coeff = coeff / ExactComplex(den)
        exponents.append((t + s) / den)
    return GaussPolyFn._sector({(0, 0, 0, 0): coeff}, exponents[0], exponents[1])


def star_power(g: GaussPolyFn, n: int) -> GaussPolyFn:
    """n-fold star product g * g * ... * g; n = 0 gives 1."""
    if n < 0:
        raise ValueError("star_power needs n >= 0")
    if not g.is_polynomial:
        raise StarClassError("star_power is defined on the polynomial class")
    out = GaussPolyFn.constant(1)
    for _ in range(n):
        out = star_exact(out, g)
    return out


def moyal_bracket(f: GaussPolyFn, g: GaussPolyFn) -> GaussPolyFn:
    """f * g - g * f on the exactly composable class."""
    return star_exact(f, g) - star_exact(g, f)


def poisson_bracket(
    f: GaussPolyFn, g: GaussPolyFn, params: Params = DEFAULT_PARAMS
) -> GaussPolyFn:
    """Canonical Poisson bracket, computed in ladder coordinates.

    The chain rule reduces it to the first-order bidifferential,
    {f,g}_P = (f_a g_abar + f_b g_bbar - f_abar g_a - f_bbar g_b) / (i*hbar).
    """
    acc = (
        f.deriv("a") * g.deriv("abar")
        + f.deriv("b") * g.deriv("bbar")
        - f.deriv("abar") * g.deriv("a")
        - f.deriv("bbar") * g.deriv("b")
    )
    return acc.scale(ExactComplex(0, -Fraction(1) / Fraction(params.hbar)))


# ---------------------------------------------------------------------------
# ladder <-> canonical coordinate conversion


def _ladder_images_qp(params: Params) -> list[QPPoly]:
    """a, abar, b, bbar as linear QPPoly in (q1, q2, p1, p2)."""
    g2 = Fraction(1) / (2 * Fraction(params.gamma))
    kg2 = Fraction(1) / (2 * Fraction(params.kappa) * Fraction(params.gamma))
    i = ExactComplex(0, 1)
    a = QPPoly(
        {(1, 0, 0, 0): -i * g2, (0, 1, 0, 0): g2, (0, 0, 1, 0): kg2, (0, 0, 0, 1): i * kg2}
    )
    b = QPPoly(
        {(1, 0, 0, 0): i * g2, (0, 1, 0, 0): g2, (0, 0, 1, 0): -kg2, (0, 0, 0, 1): i * kg2}
    )
    return [a, a.conjugate(), b, b.conjugate()]


def _qp_images_ladder(params: Params) -> list[GaussPolyFn]:
    """q1, q2, p1, p2 as linear GaussPolyFn in (a, abar, b, bbar)."""
    g = Fraction(params.gamma)
    k = Fraction(params.kappa)
    ig2 = ExactComplex(0, g / 2)
    q1 = GaussPolyFn({(1, 0, 0, 0): ig2, (0, 1, 0, 0): -ig2, (0, 0, 1, 0): -ig2, (0, 0, 0, 1): ig2})
    q2 = GaussPolyFn.constant(g / 2) * GaussPolyFn(
        {(1, 0, 0, 0): 1, (0, 1, 0, 0): 1, (0, 0, 1, 0): 1, (0, 0, 0, 1): 1}
    )
    kg2 = ExactComplex(k * g / 2)
    p1 = GaussPolyFn({(1, 0, 0, 0): kg2, (0, 1, 0, 0): kg2, (0, 0, 1, 0): -kg2, (0, 0, 0, 1): -kg2})
    ikg2 = ExactComplex(0, k * g / 2)
    p2 = GaussPolyFn(
        {(1, 0, 0, 0): -ikg2, (0, 1, 0, 0): ikg2, (0, 0, 1, 0): -ikg2, (0, 0, 0, 1): ikg2}
    )
    return [q1, q2, p1, p2]


def qp_to_ladder(poly: QPPoly, params: Params = DEFAULT_PARAMS) -> GaussPolyFn:
    """Express a canonical-coordinate polynomial in ladder coordinates."""
    images = _qp_images_ladder(params)
    out = GaussPolyFn.zero()
    for key, c in poly.terms.items():
        term = GaussPolyFn.constant(c)
        for i, e in enumerate(key):
            for _ in range(e):
                term = term * images[i]
        out = out + term
    return out


def ladder_to_qp(f: GaussPolyFn, params: Params = DEFAULT_PARAMS) -> QPPoly:
    """Inverse conversion; the function must be a pure polynomial."""
    if not f.is_polynomial:
        raise StarClassError("only the polynomial part converts to a QPPoly")
    images = _ladder_images_qp(params)
    out = QPPoly.zero()
    for key, c in f.terms.items():
        term = QPPoly.constant(c)
        for i, e in enumerate(key):
            term = term * images[i].pow(e)
        out = out + term
    return out


# ---------------------------------------------------------------------------
# numeric star product (truncated series)


class StarNumericResult(NamedTuple):
    value: complex
    last_term: float  # magnitude of the final included order, as a convergence indicator


class _FPoly:
    """Float-coefficient mirror of GaussPolyFn used by derivative tables."""

    __slots__ = ("terms", "sa", "sb")

    def __init__(self, terms: dict[Key, complex], sa: float, sb: float):
        self.terms = terms
        self.sa = sa
        self.sb = sb

    @classmethod
    def from_exact(cls, f: GaussPolyFn) -> "_FPoly":
        return cls({k: complex(c) for k, c in f.terms.items()}, *map(float, f.sector_gauss))

    def deriv(self, var: str) -> "_FPoly":
        i = VARS.index(var)
        out: dict[Key, complex] = {}
        for k, c in self.terms.items():
            if k[i] > 0:
                nk = list(k)
                nk[i] -= 1
                nk = tuple(nk)
                out[nk] = out.get(nk, 0.0) + c * k[i]
        s = self.sa if var in ("a", "abar") else self.sb
        if s:
            partner = {"a": 1, "abar": 0, "b": 3, "bbar": 2}[var]
            for k, c in self.terms.items():
                nk = list(k)
                nk[partner] += 1
                nk = tuple(nk)
                out[nk] = out.get(nk, 0.0) - c * s
        return _FPoly(out, self.sa, self.sb)

    def lincomb(self, pieces: list[tuple[complex, "_FPoly"]]) -> "_FPoly":
        out: dict[Key, complex] = {}
        for w, p in pieces:
            for k, c in p.terms.items():
                out[k] = out.get(k, 0.0) + w * c
        return _FPoly(out, self.sa, self.sb)

    def eval(self, a, abar, b, bbar) -> complex:
        acc = 0.0j
        for (i, j, k, l), c in self.terms.items():
            acc = acc + c * a**i * abar**j * b**k * bbar**l
        if self.sa or self.sb:
            acc = acc * np.exp(-self.sa * a * abar - self.sb * b * bbar)
        return acc


class SmoothFn:
    """Numeric operand for `star_numeric`: a value handle plus partial
    derivative handles with respect to (q1, q2, p1, p2)."""

    def __init__(
        self,
        value: Callable,
        deriv: Optional[Callable] = None,
        max_order: Optional[int] = None,
        _qp_tables=None,
        _sector=None,
    ):
        self._value = value
        self._deriv = deriv
        self.max_order = max_order
        self._qp_tables = _qp_tables  # (root _FPoly, cache dict, params) or None
        self._sector = _sector  # (fa _FPoly, fb _FPoly, scale) or None

    # construction ---------------------------------------------------------

    @classmethod
    def from_gausspoly(cls, f: GaussPolyFn, params: Params = DEFAULT_PARAMS) -> "SmoothFn":
        root = _FPoly.from_exact(f)
        cache: dict[Key, _FPoly] = {(0, 0, 0, 0): root}
        return cls(value=None, max_order=None, _qp_tables=(root, cache, params))

    @classmethod
    def from_sector_product(
        cls,
        fa: GaussPolyFn,
        fb: GaussPolyFn,
        scale: float = 1.0,
        params: Params = DEFAULT_PARAMS,
    ) -> "SmoothFn":
        """Product fa(a, abar) * fb(b, bbar) * scale; enables the factored
        fast path of the truncated series."""
        if fa.max_exponent("b") or fa.max_exponent("bbar") or fa.sector_gauss[1] != 0:
            raise ValueError("fa must depend on the a sector only")
        if fb.max_exponent("a") or fb.max_exponent("abar") or fb.sector_gauss[0] != 0:
            raise ValueError("fb must depend on the b sector only")
        combined = (fa * fb).scale(exact(scale))
        out = cls.from_gausspoly(combined, params)
        out._sector = (_FPoly.from_exact(fa), _FPoly.from_exact(fb), complex(scale))
        return out

    @classmethod
    def from_callable(
        cls, fn: Callable, deriv: Optional[Callable] = None, max_order: int = 2, step: float = 1e-3
    ) -> "SmoothFn":
        """Wrap an arbitrary evaluator.  Without an explicit derivative
        handle, central finite differences supply derivatives up to
        `max_order` (reliable only for low orders)."""
        if deriv is None:

            def deriv(multi, pt):
                return _fd_derivative(fn, multi, pt, step)

        return cls(value=fn, deriv=deriv, max_order=max_order)

    # evaluation -----------------------------------------------------------

    def value(self, pt: PhasePoint) -> complex:
        if self._qp_tables is not None:
            root, _, params = self._qp_tables
            return root.eval(*_ladder_values(pt, params))
        return self._value(*pt)

    def deriv(self, multi: Key, pt: PhasePoint) -> complex:
        """Derivative of order multi = (n_q1, n_q2, n_p1, n_p2) at pt."""
        if self._qp_tables is not None:
            return self._qp_table_entry(multi).eval(*_ladder_values(pt, self._qp_tables[2]))
        if self.max_order is not None and sum(multi) > self.max_order:
            raise CapabilityError(
                f"derivative order {sum(multi)} exceeds available order {self.max_order}"
            )
        if sum(multi) == 0:
            return self._value(*pt)
        return self._deriv(multi, pt)

    def _qp_table_entry(self, multi: Key) -> _FPoly:
        root, cache, params = self._qp_tables
        got = cache.get(multi)
        if got is not None:
            return got
        axis = next(i for i, m in enumerate(multi) if m > 0)
        parent_key = list(multi)
        parent_key[axis] -= 1
        parent = self._qp_table_entry(tuple(parent_key))
        entry = _qp_derivative(parent, axis, params)
        cache[multi] = entry
        return entry


def _ladder_values(pt: PhasePoint, params: Params):
    q1, q2, p1, p2 = pt
    k, d = params.kappa, 2.0 * params.kappa * params.gamma
    a = complex(p1 + k * q2, p2 - k * q1) / d
    b = complex(k * q2 - p1, p2 + k * q1) / d
    return a, a.conjugate(), b, b.conjugate()


def _qp_derivative(p: _FPoly, axis: int, params: Params) -> _FPoly:
    """d/d(q1,q2,p1,p2)[axis] as a complex linear combination of ladder derivatives."""
    g, kg = params.gamma, params.kappa * params.gamma
    da, dab, db, dbb = (p.deriv(v) for v in VARS)
    if axis == 0:  # q1
        w = 1j / (2 * g)
        return p.lincomb([(-w, da), (w, dab), (w, db), (-w, dbb)])
    if axis == 1:  # q2
        w = 1.0 / (2 * g)
        return p.lincomb([(w, da), (w, dab), (w, db), (w, dbb)])
    if axis == 2:  # p1
        w = 1.0 / (2 * kg)
        return p.lincomb([(w, da), (w, dab), (-w, db), (-w, dbb)])
    w = 1j / (2 * kg)  # p2
    return p.lincomb([(w, da), (-w, dab), (w, db), (-w, dbb)])


def _fd_derivative(fn, multi: Key, pt: PhasePoint, step: float) -> complex:
    total = sum(multi)
    if total == 0:
        return fn(*pt)
    axis = next(i for i, m in enumerate(multi) if m > 0)
    lower = list(multi)
    lower[axis] -= 1
    lower = tuple(lower)
    up = list(pt)
    up[axis] += step
    down = list(pt)
    down[axis] -= step
    return (
        _fd_derivative(fn, lower, PhasePoint(*up), step)
        - _fd_derivative(fn, lower, PhasePoint(*down), step)
    ) / (2 * step)


def _compositions(total: int):
    for m1 in range(total + 1):
        for m2 in range(total - m1 + 1):
            for m3 in range(total - m1 - m2 + 1):
                yield m1, m2, m3, total - m1 - m2 - m3


def star_numeric(
    f: SmoothFn,
    g: SmoothFn,
    pt: PhasePoint,
    order: int = DEFAULT_NUMERIC_ORDER,
    params: Params = DEFAULT_PARAMS,
) -> StarNumericResult:
    """Partial sum of the star-product bidifferential series through the
    given total order, evaluated at a phase point.

    Returns the value together with the magnitude of the last included
    order; the series can be asymptotic-like, so convergence judgment is
    the caller's.
    """
    if order < 0:
        raise ValueError("order must be nonnegative")
    for side in (f, g):
        if side.max_order is not None and side.max_order < order:
            raise CapabilityError(
                f"operand provides derivatives only up to order {side.max_order}"
            )
    if f._sector is not None and g._sector is not None:
        return _star_numeric_sectors(f, g, pt, order, params)
    half = 0.5j * params.hbar
    value = 0.0j
    last = 0.0
    for total in range(order + 1):
        term = 0.0j
        for m1, m2, m3, m4 in _compositions(total):
            cf = half ** (m1 + m2) * (-half) ** (m3 + m4)
            cf /= (
                math.factorial(m1) * math.factorial(m2) * math.factorial(m3) * math.factorial(m4)
            )
            df = f.deriv((m1, m2, m3, m4), pt)
            if df == 0:
                continue
            dg = g.deriv((m3, m4, m1, m2), pt)
            term += cf * df * dg
        value += term
        last = abs(term)
    return StarNumericResult(value, last)


def _sector_tables(fn: SmoothFn, which: int, order: int) -> dict[tuple[int, int], _FPoly]:
    """Cache of d_a^i d_abar^j (sector factor) up to total order."""
    key = ("_sector_cache", which, order)
    cache = getattr(fn, "_cache", None)
    if cache is None:
        cache = {}
        fn._cache = cache
    if key in cache:
        return cache[key]
    base = fn._sector[which]
    v1, v2 = ("a", "abar") if which == 0 else ("b", "bbar")
    table = {(0, 0): base}
    for i in range(order + 1):
        for j in range(order + 1 - i):
            if (i, j) == (0, 0):
                continue
            if i > 0:
                table[(i, j)] = table[(i - 1, j)].deriv(v1)
            else:
                table[(i, j)] = table[(i, j - 1)].deriv(v2)
    cache[key] = table
    return table


def _star_numeric_sectors(
    f: SmoothFn, g: SmoothFn, pt: PhasePoint, order: int, params: Params
) -> StarNumericResult:
    a, abar, b, bbar = _ladder_values(pt, params)
    fa, fb = _sector_tables(f, 0, order), _sector_tables(f, 1, order)
    ga, gb = _sector_tables(g, 0, order), _sector_tables(g, 1, order)

    def values(table, which):
        args = (a, abar, 0.0, 0.0) if which == 0 else (0.0, 0.0, b, bbar)
        return {k: p.eval(*args) for k, p in table.items()}

    fav, fbv = values(fa, 0), values(fb, 1)
    gav, gbv = values(ga, 0), values(gb, 1)

    def sector_sums(fv, gv):
        sums = [0.0j] * (order + 1)
        for m in range(order + 1):
            acc = 0.0j
            for j in range(m + 1):
                r = m - j
                c = (0.5) ** j * (-0.5) ** r / (math.factorial(j) * math.factorial(r))
                acc += c * fv[(j, r)] * gv[(r, j)]
            sums[m] = acc
        return sums

    sa = sector_sums(fav, gav)
    sb = sector_sums(fbv, gbv)
    scale = f._sector[2] * g._sector[2]
    value = 0.0j
    last = 0.0
    for total in range(order + 1):
        term = sum(sa[m] * sb[total - m] for m in range(total + 1)) * scale
        value += term
        last = abs(term)
    return StarNumericResult(value, last)


def moyal_bracket_numeric(
    f: SmoothFn,
    g: SmoothFn,
    pt: PhasePoint,
    order: int = DEFAULT_NUMERIC_ORDER,
    params: Params = DEFAULT_PARAMS,
) -> complex:
    """f * g - g * f through the truncated series."""
    return (
        star_numeric(f, g, pt, order, params).value
        - star_numeric(g, f, pt, order, params).value
    )
