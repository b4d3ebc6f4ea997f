"""Closed-form Wigner functions of Landau levels and their generating function.

The diagonal family is

    W_nl = 4 (-1)^{n+l} L_n(4 a abar) L_l(4 b bbar) exp(-2(a abar + b bbar)),

the general (diagonal and off-diagonal) family follows from the generating
function G by parameter differentiation, and a negative Laguerre superscript
is resolved eagerly so no negative powers of the ladder coordinates appear.
All evaluators broadcast over numpy arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exactnum import ExactComplex
from .moyal import GaussPolyFn
from .phasespace import DEFAULT_PARAMS, Params, PhasePoint
from .specialfn import laguerre, laguerre_poly


@dataclass(frozen=True)
class WignerIndex:
    """Index quadruple (n1, n2, l1, l2); diagonal means n1 == n2 and l1 == l2."""

    n1: int
    n2: int
    l1: int
    l2: int

    def __post_init__(self):
        if min(self.n1, self.n2, self.l1, self.l2) < 0:
            raise ValueError("Wigner indices must be nonnegative")

    @classmethod
    def diagonal(cls, n: int, l: int) -> "WignerIndex":
        return cls(n, n, l, l)

    @property
    def is_diagonal(self) -> bool:
        return self.n1 == self.n2 and self.l1 == self.l2


def factf(n: int) -> float:
    """Float factorial; exact up to 20!, lgamma accumulation beyond."""
    if n < 0:
        raise ValueError("factorial of negative integer")
    if n <= 20:
        return float(math.factorial(n))
    return math.exp(math.lgamma(n + 1))


def _ladder_products(pt_or_q1, q2, p1, p2, params: Params):
    if q2 is None:
        q1, q2, p1, p2 = pt_or_q1
    else:
        q1 = pt_or_q1
    k, d = params.kappa, 2.0 * params.kappa * params.gamma
    are = (p1 + k * q2) / d
    aim = (p2 - k * q1) / d
    bre = (k * q2 - p1) / d
    bim = (p2 + k * q1) / d
    return are + 1j * aim, bre + 1j * bim, are * are + aim * aim, bre * bre + bim * bim


def eval_ground(pt: PhasePoint, params: Params = DEFAULT_PARAMS):
    """Ground-state value 4*exp(-4*H0/(hbar*omega)) with the isotropic
    oscillator H0 = p**2/(2m) + m*omega**2*q**2/8."""
    q1, q2, p1, p2 = pt
    h0 = (p1 * p1 + p2 * p2) / (2.0 * params.m) + params.m * params.omega**2 * (
        q1 * q1 + q2 * q2
    ) / 8.0
    return 4.0 * np.exp(-4.0 * h0 / (params.hbar * params.omega))


def eval_wigner(idx: WignerIndex, pt: PhasePoint, params: Params = DEFAULT_PARAMS):
    """Closed-form Wigner function value at a phase point.

    Returns a real value for diagonal indices, complex otherwise.
    """
    a, b, u, v = _ladder_products(pt, None, None, None, params)
    return _eval_from_ladder(idx, a, np.conjugate(a), b, np.conjugate(b), u, v)


def eval_wigner_xy(idx: WignerIndex, q1, q2, p1, p2, params: Params = DEFAULT_PARAMS):
    """Array-friendly form of `eval_wigner` over coordinate arrays."""
    a, b, u, v = _ladder_products(q1, q2, p1, p2, params)
    return _eval_from_ladder(idx, a, np.conjugate(a), b, np.conjugate(b), u, v)


def eval_wigner_ladder(idx: WignerIndex, a, abar, b, bbar):
    """Evaluate at independent ladder values (analytic continuation in abar,
    bbar); used by the scaling-symmetry checks."""
    return _eval_from_ladder(idx, a, abar, b, bbar, a * abar, b * bbar)


def _sector_factor(nc: int, na: int, xbar, x, arg):
    """(2*xbar)^{nc-na} L_{na}^{nc-na}(arg) with a negative superscript
    resolved into (-2*x)^{na-nc} (nc!/na!) L_{nc}^{na-nc}(arg)."""
    if nc >= na:
        return (2 * xbar) ** (nc - na) * laguerre(na, nc - na, arg)
    scale = factf(nc) / factf(na)
    return (-2 * x) ** (na - nc) * scale * laguerre(nc, na - nc, arg)


def _eval_from_ladder(idx: WignerIndex, a, abar, b, bbar, u, v):
    pre = 4.0 * math.sqrt(factf(idx.n2) * factf(idx.l2) / (factf(idx.n1) * factf(idx.l1)))
    sign = (-1.0) ** (idx.n2 + idx.l2)
    value = (
        pre
        * sign
        * _sector_factor(idx.n1, idx.n2, abar, a, 4 * u)
        * _sector_factor(idx.l1, idx.l2, bbar, b, 4 * v)
        * np.exp(-2 * (u + v))
    )
    if idx.is_diagonal:
        return value.real if np.iscomplexobj(value) else value
    return value


def eval_wigner_levels(idx: WignerIndex, pt: PhasePoint, params: Params = DEFAULT_PARAMS):
    """Diagonal value read off the level sets of the two constants of motion:
    4 (-1)^{n+l} L_n(4 H/hw) L_l(4 J/h + 4 H/hw) exp(-2 J/h - 4 H/hw).

    Independent code path from `eval_wigner` (no ladder coordinates).
    """
    if not idx.is_diagonal:
        raise ValueError("level-set form applies to diagonal indices")
    q1, q2, p1, p2 = pt
    k = params.kappa
    ham = ((p1 + k * q2) ** 2 + (p2 - k * q1) ** 2) / (2.0 * params.m)
    hw = ham / (params.hbar * params.omega)
    jh = (q1 * p2 - q2 * p1) / params.hbar
    n, l = idx.n1, idx.l1
    return (
        4.0
        * (-1.0) ** (n + l)
        * laguerre(n, 0, 4.0 * hw)
        * laguerre(l, 0, 4.0 * jh + 4.0 * hw)
        * np.exp(-2.0 * jh - 4.0 * hw)
    )


# ---------------------------------------------------------------------------
# exact symbolic representation


def _sector_gausspoly(nc: int, na: int, creator_axis: int) -> GaussPolyFn:
    """Exact one-sector factor sqrt(na!/nc!) (-1)^na (2 xbar)^{nc-na}
    L_{na}^{nc-na}(4 x xbar), for the a sector (creator_axis 1) or the b
    sector (creator_axis 3); the Gaussian is attached by the caller."""
    if nc >= na:
        poly = laguerre_poly(na, nc - na)
        extra_creator, extra_annih, scale = nc - na, 0, Fraction(1)
    else:
        poly = laguerre_poly(nc, na - nc)
        extra_creator, extra_annih = 0, na - nc
        scale = Fraction(math.factorial(nc), math.factorial(na)) * (-1) ** (na - nc)
    norm = ExactComplex.sqrt_rational(Fraction(math.factorial(na), math.factorial(nc)))
    norm = norm * ExactComplex(scale * (-1) ** na * Fraction(2) ** (extra_creator + extra_annih))
    annih_axis = creator_axis - 1
    terms = {}
    for k, c in enumerate(poly.coeffs):
        key = [0, 0, 0, 0]
        key[annih_axis] = k + extra_annih
        key[creator_axis] = k + extra_creator
        terms[tuple(key)] = ExactComplex(c * Fraction(4) ** k)
    return GaussPolyFn(terms).scale(norm)


def wigner_gausspoly(idx: WignerIndex) -> GaussPolyFn:
    """Exact Gaussian-polynomial representation of W_{n1 n2 l1 l2}."""
    fa = _sector_gausspoly(idx.n1, idx.n2, 1)
    fb = _sector_gausspoly(idx.l1, idx.l2, 3)
    return (fa * fb).scale(4) * GaussPolyFn.gaussian(2)


def wigner_sector_split(idx: WignerIndex) -> tuple[GaussPolyFn, GaussPolyFn, float]:
    """(fa, fb, scale) with W = scale * fa(a, abar) * fb(b, bbar); each factor
    carries its own sector Gaussian.  Feeds the factored numeric star path."""
    fa = _sector_gausspoly(idx.n1, idx.n2, 1) * GaussPolyFn._sector({(0, 0, 0, 0): 1}, 2, 0)
    fb = _sector_gausspoly(idx.l1, idx.l2, 3) * GaussPolyFn._sector({(0, 0, 0, 0): 1}, 0, 2)
    return fa, fb, 4.0


def hamiltonian_fn(params: Params = DEFAULT_PARAMS) -> GaussPolyFn:
    """Landau Hamiltonian as a phase-space function: hbar*omega*a*abar."""
    return GaussPolyFn.monomial((1, 1, 0, 0), Fraction(params.hbar) * Fraction(params.omega))


def angular_momentum_fn(params: Params = DEFAULT_PARAMS) -> GaussPolyFn:
    """Canonical angular momentum (symmetric gauge): hbar*(b*bbar - a*abar)."""
    h = Fraction(params.hbar)
    return GaussPolyFn({(0, 0, 1, 1): h, (1, 1, 0, 0): -h})


# ---------------------------------------------------------------------------
# generating function


@dataclass(frozen=True)
class GenParams:
    """Complex source parameters; G is real when conj(alpha_j) == beta_j."""

    alpha1: complex = 0j
    alpha2: complex = 0j
    beta1: complex = 0j
    beta2: complex = 0j


def eval_generating(gp: GenParams, pt: PhasePoint, params: Params = DEFAULT_PARAMS):
    """G = exp(-alpha.beta) exp(2(alpha1 abar + beta1 a + alpha2 bbar + beta2 b))
    * exp(-2(a abar + b bbar))."""
    a, b, u, v = _ladder_products(pt, None, None, None, params)
    return _eval_generating_ladder(gp, a, np.conjugate(a), b, np.conjugate(b), u, v)


def _eval_generating_ladder(gp: GenParams, a, abar, b, bbar, u, v):
    lin = gp.alpha1 * abar + gp.beta1 * a + gp.alpha2 * bbar + gp.beta2 * b
    dot = gp.alpha1 * gp.beta1 + gp.alpha2 * gp.beta2
    return np.exp(-dot + 2.0 * lin - 2.0 * (u + v))


def generating_ladder_partials(gp: GenParams, pt: PhasePoint, params: Params = DEFAULT_PARAMS):
    """Value of G and its four ladder-coordinate partial derivatives at pt.

    Returns (g, dict) with dict keys 'a', 'abar', 'b', 'bbar'; each partial is
    an explicit multiplier of G read off the exponential form.
    """
    a, b, u, v = _ladder_products(pt, None, None, None, params)
    abar, bbar = np.conjugate(a), np.conjugate(b)
    g = _eval_generating_ladder(gp, a, abar, b, bbar, u, v)
    partials = {
        "a": (2.0 * gp.beta1 - 2.0 * abar) * g,
        "abar": (2.0 * gp.alpha1 - 2.0 * a) * g,
        "b": (2.0 * gp.beta2 - 2.0 * bbar) * g,
        "bbar": (2.0 * gp.alpha2 - 2.0 * b) * g,
    }
    return g, partials


def coherent_residuals(gp: GenParams, pt: PhasePoint, params: Params = DEFAULT_PARAMS):
    """Residuals of the coherent-state and shift relations of G at a point.

    The star products with the degree-one ladder functions terminate, giving
    a * G = (a + d_abar/2) G and G * abar = (abar + d_a/2) G; the shift
    realizations are abar * G = (2 abar - beta1) G and G * a = (2a - alpha1) G
    (same pattern in the b sector).  Returns a dict of absolute residuals.
    """
    a, b, _, _ = _ladder_products(pt, None, None, None, params)
    abar, bbar = np.conjugate(a), np.conjugate(b)
    g, d = generating_ladder_partials(gp, pt, params)
    return {
        "a_left_eigen": abs(a * g + 0.5 * d["abar"] - gp.alpha1 * g),
        "b_left_eigen": abs(b * g + 0.5 * d["bbar"] - gp.alpha2 * g),
        "abar_right_eigen": abs((abar * g + 0.5 * d["a"]) - gp.beta1 * g),
        "bbar_right_eigen": abs((bbar * g + 0.5 * d["b"]) - gp.beta2 * g),
        "abar_left_shift": abs((abar * g - 0.5 * d["a"]) - (2.0 * abar - gp.beta1) * g),
        "bbar_left_shift": abs((bbar * g - 0.5 * d["b"]) - (2.0 * bbar - gp.beta2) * g),
        "a_right_shift": abs((a * g - 0.5 * d["abar"]) - (2.0 * a - gp.alpha1) * g),
        "b_right_shift": abs((b * g - 0.5 * d["bbar"]) - (2.0 * b - gp.alpha2) * g),
    }


def _sector_extraction(nc: int, na: int, xbar, x):
    """Parameter-polynomial coefficient extraction for one sector of G:
    sqrt(nc! na!) * sum_u (-1)^u (2 xbar)^{nc-u} (2 x)^{na-u} /
    (u! (nc-u)! (na-u)!)."""
    total = 0.0j
    for u in range(min(nc, na) + 1):
        total += (
            (-1.0) ** u
            * (2.0 * xbar) ** (nc - u)
            * (2.0 * x) ** (na - u)
            / (factf(u) * factf(nc - u) * factf(na - u))
        )
    return math.sqrt(factf(nc) * factf(na)) * total


def derive_wigner_from_G(idx: WignerIndex, pt: PhasePoint, params: Params = DEFAULT_PARAMS):
    """Wigner value from the generating function by exact polynomial
    extraction of the mixed parameter derivative at alpha = beta = 0
    (no numeric differentiation).  Must agree with `eval_wigner`.
    """
    if max(idx.n1, idx.n2, idx.l1, idx.l2) > 6:
        raise ValueError("extraction path is pinned to indices <= 6")
    a, b, u, v = _ladder_products(pt, None, None, None, params)
    abar, bbar = np.conjugate(a), np.conjugate(b)
    value = (
        4.0
        * _sector_extraction(idx.n1, idx.n2, abar, a)
        * _sector_extraction(idx.l1, idx.l2, bbar, b)
        * np.exp(-2.0 * (u + v))
    )
    return value.real if idx.is_diagonal else value
