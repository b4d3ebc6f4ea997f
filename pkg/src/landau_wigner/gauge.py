"""Unitary similarity and gauge transformations realized by star conjugation.

The gauge factor U = exp(i*theta*chi(q)) acts by conjugation, U * f * U^{-1}.
Because chi depends only on position, the double star series terminates at
the momentum degree of f, so conjugation of any (q,p)-polynomial is exact:
U is never expanded, only the polynomials U^{-1} d^m U, which obey a simple
recursion.

For chi quadratic the conjugation agrees with composition by the affine
symplectic map p -> p - hbar*theta*grad(chi): the two maps are both star
automorphisms and act identically on the coordinate functions.  That gives
an exact representation of transformed Wigner functions as a polynomial
times a general Gaussian (`GaussQuadForm`), on which the star-eigenvalue
equation can be checked coefficientwise.  A direct wavefunction-route
integral (phase-multiplied ground state) cross-checks the construction
numerically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exactnum import ExactComplex
from .moyal import ladder_to_qp
from .phasespace import DEFAULT_PARAMS, Params, PhasePoint
from .qpoly import AXES, QPPoly
from .quad import hermite_rule, integrate_gauss_poly
from .wigner import WignerIndex, hamiltonian_fn, wigner_gausspoly

DEFAULT_CHI_DEGREE_CAP = 6


@dataclass(frozen=True)
class GaugeFn:
    """Gauge generator: U = exp(i * coupling * chi(q1, q2)).

    chi must be a real-coefficient polynomial in the positions only; the
    coupling carries the charge-over-(c*hbar) factor."""

    chi: QPPoly
    coupling: float = 1.0
    degree_cap: int = DEFAULT_CHI_DEGREE_CAP

    def __post_init__(self):
        if not self.chi.depends_only_on_q():
            raise ValueError("gauge function must depend on positions only")
        if not self.chi.is_real():
            raise ValueError("gauge function must have real coefficients")
        if self.chi.degree() > self.degree_cap:
            raise ValueError(f"gauge polynomial degree exceeds cap {self.degree_cap}")

    @property
    def itheta(self) -> ExactComplex:
        return ExactComplex(0, Fraction(self.coupling))

    def grad(self) -> tuple[QPPoly, QPPoly]:
        return self.chi.deriv("q1"), self.chi.deriv("q2")


def landau_gauge_fn(params: Params = DEFAULT_PARAMS, sign: int = 1) -> GaugeFn:
    """The quadratic generator chi = sign * q1*q2 with coupling kappa/hbar,
    which maps the symmetric-gauge potential to a Landau-gauge one."""
    chi = QPPoly({(1, 1, 0, 0): sign})
    return GaugeFn(chi=chi, coupling=params.kappa / params.hbar)


def _phase_derivative_polys(g: GaugeFn, m1: int, m2: int, sign: int) -> list[list[QPPoly]]:
    """Table T[i][j] = U^{-sign} d_q1^i d_q2^j U^{sign} (polynomials)."""
    it = g.itheta if sign > 0 else -g.itheta
    gx, gy = g.grad()
    table = [[QPPoly.zero() for _ in range(m2 + 1)] for _ in range(m1 + 1)]
    table[0][0] = QPPoly.constant(1)
    for i in range(m1 + 1):
        for j in range(m2 + 1):
            if i == 0 and j == 0:
                continue
            if i > 0:
                prev = table[i - 1][j]
                table[i][j] = prev.deriv("q1") + (gx * prev).scale(it)
            else:
                prev = table[i][j - 1]
                table[i][j] = prev.deriv("q2") + (gy * prev).scale(it)
    return table


def conjugate_function(g: GaugeFn, f: QPPoly, params: Params = DEFAULT_PARAMS) -> QPPoly:
    """U * f * U^{-1}, exact; terminates at the momentum degree of f."""
    ih2 = ExactComplex(0, Fraction(params.hbar) / 2)
    m1 = max((k[2] for k in f.terms), default=0)
    m2 = max((k[3] for k in f.terms), default=0)
    left = _phase_derivative_polys(g, m1, m2, +1)

    # step 1: U * f = S * U with the series along (left d_q) x (right d_p)
    s = QPPoly.zero()
    dp = f
    for i in range(m1 + 1):
        dp_j = dp
        for j in range(m2 + 1):
            if not dp_j.is_zero:
                coeff = ih2 ** (i + j) / (math.factorial(i) * math.factorial(j))
                s = s + (left[i][j] * dp_j).scale(coeff)
            dp_j = dp_j.deriv("p2")
        dp = dp.deriv("p1")

    # step 2: (S * U) * U^{-1}; only (left d_p) x (right d_q) contributes
    n1 = max((k[2] for k in s.terms), default=0)
    n2 = max((k[3] for k in s.terms), default=0)
    right = _phase_derivative_polys(g, n1, n2, -1)
    out = QPPoly.zero()
    dp = s
    for i in range(n1 + 1):
        dp_j = dp
        for j in range(n2 + 1):
            if not dp_j.is_zero:
                coeff = (-ih2) ** (i + j) / (math.factorial(i) * math.factorial(j))
                out = out + (dp_j * right[i][j]).scale(coeff)
            dp_j = dp_j.deriv("p2")
        dp = dp.deriv("p1")
    return out


def conjugate_momentum(g: GaugeFn, component: int, params: Params = DEFAULT_PARAMS) -> QPPoly:
    """U * p_component * U^{-1} = p_component - hbar*coupling*d(chi)/dq_component."""
    if component not in (1, 2):
        raise ValueError("momentum component must be 1 or 2")
    return conjugate_function(g, QPPoly.coordinate(f"p{component}"), params)


# ---------------------------------------------------------------------------
# transformed Wigner functions (quadratic gauge generators)


@dataclass(frozen=True)
class GaussQuadForm:
    """poly(y) * exp(-y^T Q y) with exact symmetric quadratic form Q."""

    poly: QPPoly
    qform: tuple[tuple[Fraction, ...], ...]

    def scale(self, factor) -> "GaussQuadForm":
        return GaussQuadForm(self.poly.scale(factor), self.qform)

    def __add__(self, other: "GaussQuadForm") -> "GaussQuadForm":
        if self.qform != other.qform:
            raise ValueError("cannot add Gaussians with different quadratic forms")
        return GaussQuadForm(self.poly + other.poly, self.qform)

    def __sub__(self, other: "GaussQuadForm") -> "GaussQuadForm":
        return self + other.scale(-1)

    def _log_deriv(self, axis: str) -> QPPoly:
        i = AXES.index(axis)
        row = {}
        for j in range(4):
            if self.qform[i][j] != 0:
                key = [0, 0, 0, 0]
                key[j] = 1
                row[tuple(key)] = -2 * self.qform[i][j]
        return QPPoly(row)

    def deriv(self, axis: str) -> "GaussQuadForm":
        return GaussQuadForm(self.poly.deriv(axis) + self._log_deriv(axis) * self.poly, self.qform)

    def mul_poly(self, p: QPPoly) -> "GaussQuadForm":
        return GaussQuadForm(self.poly * p, self.qform)

    @property
    def is_zero(self) -> bool:
        return self.poly.is_zero

    def __call__(self, q1, q2, p1, p2):
        y = (q1, q2, p1, p2)
        expo = 0.0
        for i in range(4):
            for j in range(4):
                c = float(self.qform[i][j])
                if c:
                    expo = expo + c * y[i] * y[j]
        return self.poly(q1, q2, p1, p2) * np.exp(-expo)


def ground_quadratic_form(params: Params = DEFAULT_PARAMS) -> tuple[tuple[Fraction, ...], ...]:
    """Q with exp(-y^T Q y) equal to the ground envelope:
    diag(kappa/hbar, kappa/hbar, 1/(hbar*kappa), 1/(hbar*kappa))."""
    kq = Fraction(params.kappa) / Fraction(params.hbar)
    kp = Fraction(1) / (Fraction(params.hbar) * Fraction(params.kappa))
    rows = [[Fraction(0)] * 4 for _ in range(4)]
    rows[0][0] = rows[1][1] = kq
    rows[2][2] = rows[3][3] = kp
    return tuple(tuple(r) for r in rows)


def gauge_classical_map(g: GaugeFn, params: Params = DEFAULT_PARAMS):
    """Exact matrix of the classical map p -> p - hbar*coupling*grad(chi)
    that conjugation by U implements, for purely quadratic chi (no linear
    part).  Conjugation and composition with this map are both star
    automorphisms and agree on the coordinate functions, hence everywhere."""
    gx, gy = g.grad()
    for grad in (gx, gy):
        if grad.degree() > 1:
            raise ValueError("exact transformed Wigner functions need quadratic chi")
        if (0, 0, 0, 0) in grad.terms:
            raise ValueError("chi must have no linear part (affine shifts unsupported)")
    ht = Fraction(params.hbar) * Fraction(g.coupling)
    rows = [[Fraction(0)] * 4 for _ in range(4)]
    rows[0][0] = rows[1][1] = rows[2][2] = rows[3][3] = Fraction(1)
    for comp, grad in ((2, gx), (3, gy)):
        for key, c in grad.terms.items():
            axis = key.index(1)
            if c.im != 0 or c.rad != 1:
                raise ValueError("gauge gradient must be rational-real")
            rows[comp][axis] -= ht * c.re
    return rows


def _polynomial_part(f) -> "QPPoly":
    """The coefficient polynomial of a GaussPolyFn (Gaussian factor dropped)."""
    from .moyal import GaussPolyFn

    return ladder_to_qp(GaussPolyFn(f.terms))


def transformed_wigner(
    g: GaugeFn, idx: WignerIndex, params: Params = DEFAULT_PARAMS
) -> GaussQuadForm:
    """W' = U * W * U^{-1} as an exact polynomial-times-Gaussian, built by
    composing W with the classical map of the quadratic generator."""
    smap = gauge_classical_map(g, params)
    base = wigner_gausspoly(idx)
    from .moyal import GaussPolyFn

    poly_qp = ladder_to_qp(GaussPolyFn(base.terms), params).compose_linear(smap)
    q0 = ground_quadratic_form(params)
    m = [
        [
            sum(smap[k][i] * q0[k][l] * smap[l][j] for k in range(4) for l in range(4))
            for j in range(4)
        ]
        for i in range(4)
    ]
    return GaussQuadForm(poly_qp, tuple(tuple(r) for r in m))


def star_poly_gauss(
    f: QPPoly, w: GaussQuadForm, params: Params = DEFAULT_PARAMS, side: str = "left"
) -> GaussQuadForm:
    """Terminating star product of a polynomial with a Gaussian-form function,
    from the left (f * w) or the right (w * f).  Exact."""
    ih2 = ExactComplex(0, Fraction(params.hbar) / 2)
    bounds_f = [max((k[i] for k in f.terms), default=0) for i in range(4)]
    if side == "left":
        # f along (q1, q2, p1, p2); w along (p1, p2, q1, q2); signs follow f's axes
        bounds = bounds_f
        f_vars, w_vars = ("q1", "q2", "p1", "p2"), ("p1", "p2", "q1", "q2")
        signs = (ih2, ih2, -ih2, -ih2)
    elif side == "right":
        # w along (q1, q2, p1, p2); f along (p1, p2, q1, q2); signs follow w's axes
        bounds = [bounds_f[2], bounds_f[3], bounds_f[0], bounds_f[1]]
        f_vars, w_vars = ("p1", "p2", "q1", "q2"), ("q1", "q2", "p1", "p2")
        signs = (ih2, ih2, -ih2, -ih2)
    else:
        raise ValueError("side must be 'left' or 'right'")

    total = GaussQuadForm(QPPoly.zero(), w.qform)
    df1, dw1 = f, w
    for m1 in range(bounds[0] + 1):
        if df1.is_zero:
            break
        df2, dw2 = df1, dw1
        for m2 in range(bounds[1] + 1):
            if df2.is_zero:
                break
            df3, dw3 = df2, dw2
            for m3 in range(bounds[2] + 1):
                if df3.is_zero:
                    break
                df4, dw4 = df3, dw3
                for m4 in range(bounds[3] + 1):
                    if df4.is_zero:
                        break
                    coeff = (
                        signs[0] ** m1 * signs[1] ** m2 * signs[2] ** m3 * signs[3] ** m4
                    ) / (
                        math.factorial(m1)
                        * math.factorial(m2)
                        * math.factorial(m3)
                        * math.factorial(m4)
                    )
                    total = total + dw4.mul_poly(df4).scale(coeff)
                    df4, dw4 = df4.deriv(f_vars[3]), dw4.deriv(w_vars[3])
                df3, dw3 = df3.deriv(f_vars[2]), dw3.deriv(w_vars[2])
            df2, dw2 = df2.deriv(f_vars[1]), dw2.deriv(w_vars[1])
        df1, dw1 = df1.deriv(f_vars[0]), dw1.deriv(w_vars[0])
    return total


def _nth_deriv(obj, axis: str, n: int):
    for _ in range(n):
        obj = obj.deriv(axis)
    return obj


def transformed_eigen_residual(
    g: GaugeFn, n: int, l: int, params: Params = DEFAULT_PARAMS
) -> tuple[bool, float]:
    """Check H' * W' = E_n W' = W' * H' coefficientwise for the transformed pair.

    Returns (exact_zero, max_abs_coefficient_of_residual)."""
    idx = WignerIndex.diagonal(n, l)
    h_qp = ladder_to_qp(hamiltonian_fn(params), params)
    h_prime = conjugate_function(g, h_qp, params)
    w_prime = transformed_wigner(g, idx, params)
    energy = Fraction(params.hbar) * Fraction(params.omega) * Fraction(2 * n + 1, 2)
    worst = 0.0
    ok = True
    for side in ("left", "right"):
        prod = star_poly_gauss(h_prime, w_prime, params, side)
        residual = prod - w_prime.scale(energy)
        ok = ok and residual.poly.is_zero
        for c in residual.poly.terms.values():
            worst = max(worst, abs(complex(c)))
    return ok, worst


def transformed_normalization(
    g: GaugeFn, n: int, l: int, params: Params = DEFAULT_PARAMS, order: int = 24
) -> float:
    """Phase-space integral of W', via Cholesky-whitened Gauss-Hermite."""
    w_prime = transformed_wigner(g, WignerIndex.diagonal(n, l), params)
    qf = np.array([[float(c) for c in row] for row in w_prime.qform])
    val = integrate_gauss_poly(lambda *y: w_prime.poly(*y), qf, order)
    return complex(val).real


# ---------------------------------------------------------------------------
# plane-wave kernel identities


@dataclass(frozen=True)
class _PhasePoly:
    """poly(q, p) * exp(-i (y1 p1 + y2 p2)/hbar)."""

    poly: QPPoly
    y: tuple[float, float]
    hbar: float

    def deriv(self, axis: str) -> "_PhasePoly":
        d = self.poly.deriv(axis)
        if axis == "p1":
            d = d + self.poly.scale(ExactComplex(0, -Fraction(self.y[0]) / Fraction(self.hbar)))
        elif axis == "p2":
            d = d + self.poly.scale(ExactComplex(0, -Fraction(self.y[1]) / Fraction(self.hbar)))
        return _PhasePoly(d, self.y, self.hbar)

    def __call__(self, pt: PhasePoint) -> complex:
        phase = np.exp(-1j * (self.y[0] * pt.p1 + self.y[1] * pt.p2) / self.hbar)
        return self.poly(*pt) * phase


def _star_qpoly_phase(f: QPPoly, phi: _PhasePoly, params: Params, side: str) -> _PhasePoly:
    """Terminating star product of a position polynomial with a phase kernel."""
    if not f.depends_only_on_q():
        raise ValueError("kernel star needs position-only polynomials")
    base = ExactComplex(0, Fraction(params.hbar) / 2)
    sign = base if side == "left" else -base
    b1 = max((k[0] for k in f.terms), default=0)
    b2 = max((k[1] for k in f.terms), default=0)
    acc = QPPoly.zero()
    df1, dphi1 = f, phi
    for m1 in range(b1 + 1):
        if df1.is_zero:
            break
        df2, dphi2 = df1, dphi1
        for m2 in range(b2 + 1):
            if df2.is_zero:
                break
            coeff = sign ** (m1 + m2) / (math.factorial(m1) * math.factorial(m2))
            acc = acc + (df2 * dphi2.poly).scale(coeff)
            df2, dphi2 = df2.deriv("q2"), dphi2.deriv("p2")
        df1, dphi1 = df1.deriv("q1"), dphi1.deriv("p1")
    return _PhasePoly(acc, phi.y, phi.hbar)


def verify_kernel_identity(
    f1: QPPoly,
    f2: QPPoly,
    y: tuple[float, float],
    pt: PhasePoint,
    params: Params = DEFAULT_PARAMS,
) -> float:
    """Residual of f1(q) * e^{-i y.p/hbar} * f2(q)
    = f1(q + y/2) f2(q - y/2) e^{-i y.p/hbar} at a point."""
    kernel = _PhasePoly(QPPoly.constant(1), (float(y[0]), float(y[1])), params.hbar)
    step1 = _star_qpoly_phase(f1, kernel, params, "left")
    step2 = _star_qpoly_phase(f2, step1, params, "right")
    lhs = step2(pt)
    q1p, q2p = pt.q1 + 0.5 * y[0], pt.q2 + 0.5 * y[1]
    q1m, q2m = pt.q1 - 0.5 * y[0], pt.q2 - 0.5 * y[1]
    phase = np.exp(-1j * (y[0] * pt.p1 + y[1] * pt.p2) / params.hbar)
    rhs = f1(q1p, q2p, 0.0, 0.0) * f2(q1m, q2m, 0.0, 0.0) * phase
    return abs(lhs - rhs)


def truncated_gauge_exponential(g: GaugeFn, order: int, inverse: bool = False) -> QPPoly:
    """Taylor polynomial of U (or U^{-1}) through the given order in chi."""
    it = g.itheta if not inverse else -g.itheta
    chi = g.chi
    out = QPPoly.constant(1)
    power = QPPoly.constant(1)
    for k in range(1, order + 1):
        power = power * chi
        out = out + power.scale(it**k / math.factorial(k))
    return out


def kernel_conjugation_residual(
    g: GaugeFn,
    y: tuple[float, float],
    pt: PhasePoint,
    params: Params = DEFAULT_PARAMS,
    order: int = 8,
) -> float:
    """Residual of U * e^{-i y.p/hbar} * U^{-1} = e^{i theta (chi(q+y/2)-chi(q-y/2))}
    e^{-i y.p/hbar} with U Taylor-truncated at the given order."""
    un = truncated_gauge_exponential(g, order)
    vn = truncated_gauge_exponential(g, order, inverse=True)
    kernel = _PhasePoly(QPPoly.constant(1), (float(y[0]), float(y[1])), params.hbar)
    lhs = _star_qpoly_phase(vn, _star_qpoly_phase(un, kernel, params, "left"), params, "right")(pt)
    q1p, q2p = pt.q1 + 0.5 * y[0], pt.q2 + 0.5 * y[1]
    q1m, q2m = pt.q1 - 0.5 * y[0], pt.q2 - 0.5 * y[1]
    chi_diff = (g.chi(q1p, q2p, 0, 0) - g.chi(q1m, q2m, 0, 0)).real
    phase = np.exp(1j * g.coupling * chi_diff) * np.exp(
        -1j * (y[0] * pt.p1 + y[1] * pt.p2) / params.hbar
    )
    return abs(lhs - phase)


def unitarity_remainder(g: GaugeFn, order: int) -> QPPoly:
    """U_N * V_N - 1 for matching-order truncations; every term carries a
    power of chi above the truncation order."""
    un = truncated_gauge_exponential(g, order)
    vn = truncated_gauge_exponential(g, order, inverse=True)
    return un * vn - QPPoly.constant(1)


# ---------------------------------------------------------------------------
# wavefunction-route oracle


def wigner_from_wavefunction(
    pt: PhasePoint,
    params: Params = DEFAULT_PARAMS,
    g: GaugeFn | None = None,
    order: int = 48,
) -> complex:
    """Ground-state Wigner value from the defining separation integral,
    optionally with the wavefunction multiplied by the gauge phase
    exp(i*coupling*chi).  Independent oracle for the star-product route."""
    gam = params.gamma
    rule = hermite_rule(order)
    yy1 = (2.0 * gam * rule.nodes).reshape(-1, 1)
    yy2 = (2.0 * gam * rule.nodes).reshape(1, -1)
    q1p, q2p = pt.q1 + 0.5 * yy1, pt.q2 + 0.5 * yy2
    q1m, q2m = pt.q1 - 0.5 * yy1, pt.q2 - 0.5 * yy2

    def psi0(x1, x2):
        return np.exp(-(x1 * x1 + x2 * x2) / (2.0 * gam * gam)) / (gam * math.sqrt(math.pi))

    vals = psi0(q1p, q2p) * psi0(q1m, q2m)
    if g is not None:
        chi_diff = (g.chi(q1p, q2p, 0.0, 0.0) - g.chi(q1m, q2m, 0.0, 0.0)).real
        vals = vals * np.exp(1j * g.coupling * chi_diff)
    vals = vals * np.exp(-1j * (yy1 * pt.p1 + yy2 * pt.p2) / params.hbar)
    expo = (rule.nodes**2).reshape(-1, 1) + (rule.nodes**2).reshape(1, -1)
    total = np.einsum("ij,i,j->", vals * np.exp(expo), rule.weights, rule.weights)
    return complex((2.0 * gam) ** 2 * total)
