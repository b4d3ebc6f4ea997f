"""Marginal probability densities of the diagonal Wigner functions.

Closed forms are provided on the (q1,q2), (q1,p2) and (q2,p1) planes; the
(p1,p2) form follows from the exchange symmetry
``W_nl(p1/kappa, p2/kappa, kappa q1, kappa q2) = W_ln(q1, q2, p1, p2)``
and is verified against the quadrature oracle rather than trusted.  The
(q1,p1) and (q2,p2) marginals (and any plane, as a cross-check) come from
`marginal_numeric`, a tensor Gauss-Hermite integral over the complementary
coordinate pair with weight matched to the Gaussian envelope.

All densities integrate to h^2 = (2*pi*hbar)^2 over their plane; pass
``normalized=True`` to divide that out.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .phasespace import DEFAULT_PARAMS, Params, PhasePoint
from .quad import QuadratureWarning, integrate_plane
from .specialfn import hermite, laguerre
from .wigner import GenParams, WignerIndex, eval_wigner_xy, factf

PLANES = ("q1q2", "p1p2", "q1p1", "q2p2", "q1p2", "q2p1")

_PLANE_AXES = {p: (p[:2], p[2:]) for p in PLANES}


def plane_axes(plane: str) -> tuple[str, str]:
    if plane not in PLANES:
        raise ValueError(f"unknown plane {plane!r}; expected one of {PLANES}")
    return _PLANE_AXES[plane]


def complement_axes(plane: str) -> tuple[str, str]:
    kept = set(plane_axes(plane))
    return tuple(ax for ax in ("q1", "q2", "p1", "p2") if ax not in kept)


@dataclass(frozen=True)
class DimensionlessVars:
    """Natural dimensionless combinations at a phase point."""

    rho2: float  # (q1^2 + q2^2) / gamma^2
    zeta2: float  # gamma^2 (p1^2 + p2^2) / (4 hbar^2)
    tau_plus: float  # (m w q1 + 2 p2) / (m w gamma)
    tau_minus: float  # (m w q1 - 2 p2) / (m w gamma)


def dimensionless_vars(pt: PhasePoint, params: Params = DEFAULT_PARAMS) -> DimensionlessVars:
    q1, q2, p1, p2 = pt
    g = params.gamma
    mw = params.m * params.omega
    return DimensionlessVars(
        rho2=(q1 * q1 + q2 * q2) / g**2,
        zeta2=g**2 * (p1 * p1 + p2 * p2) / (4.0 * params.hbar**2),
        tau_plus=(mw * q1 + 2.0 * p2) / (mw * g),
        tau_minus=(mw * q1 - 2.0 * p2) / (mw * g),
    )


def _check_indices(n: int, l: int):
    if n < 0 or l < 0:
        raise ValueError("marginal indices must be nonnegative")


def _maybe_normalize(value, params: Params, normalized: bool):
    return value / params.h_squared if normalized else value


def marginal_q1q2(n: int, l: int, q1, q2, params: Params = DEFAULT_PARAMS, normalized: bool = False):
    """Position-plane density 4 pi (l!/n!) (hbar/gamma)^2 rho^{2(n-l)}
    e^{-rho^2} [L_l^{n-l}(rho^2)]^2 (indices swapped when n < l)."""
    _check_indices(n, l)
    if n < l:
        n, l = l, n
    rho2 = (q1 * q1 + q2 * q2) / params.gamma**2
    val = (
        4.0
        * math.pi
        * (factf(l) / factf(n))
        * (params.hbar / params.gamma) ** 2
        * rho2 ** (n - l)
        * np.exp(-rho2)
        * laguerre(l, n - l, rho2) ** 2
    )
    return _maybe_normalize(val, params, normalized)


def marginal_p1p2(n: int, l: int, p1, p2, params: Params = DEFAULT_PARAMS, normalized: bool = False):
    """Momentum-plane density; the exchange symmetry maps it to the position
    form with swapped indices and argument 4*zeta^2."""
    _check_indices(n, l)
    z2 = params.gamma**2 * (p1 * p1 + p2 * p2) / (4.0 * params.hbar**2)
    nn, ll = (l, n) if l >= n else (n, l)  # swapped indices, then n<l guard again
    arg = 4.0 * z2
    val = (
        4.0
        * math.pi
        * params.gamma**2
        * (factf(ll) / factf(nn))
        * arg ** (nn - ll)
        * np.exp(-arg)
        * laguerre(ll, nn - ll, arg) ** 2
    )
    return _maybe_normalize(val, params, normalized)


def marginal_q1p2(n: int, l: int, q1, p2, params: Params = DEFAULT_PARAMS, normalized: bool = False):
    """Mixed-plane density (4 pi hbar / (n! l! 2^{n+l}))
    e^{-(tau+^2 + tau-^2)/2} [H_n(tau-/sqrt2) H_l(tau+/sqrt2)]^2."""
    _check_indices(n, l)
    mw = params.m * params.omega
    tp = (mw * q1 + 2.0 * p2) / (mw * params.gamma)
    tm = (mw * q1 - 2.0 * p2) / (mw * params.gamma)
    s = math.sqrt(0.5)
    val = (
        4.0
        * math.pi
        * params.hbar
        / (factf(n) * factf(l) * 2.0 ** (n + l))
        * np.exp(-0.5 * (tp * tp + tm * tm))
        * (hermite(n, tm * s) * hermite(l, tp * s)) ** 2
    )
    return _maybe_normalize(val, params, normalized)


def marginal_q2p1(n: int, l: int, q2, p1, params: Params = DEFAULT_PARAMS, normalized: bool = False):
    """The (q2,p1) density is the index-swapped, argument-relabeled (q1,p2) one."""
    return marginal_q1p2(l, n, q2, p1, params, normalized)


_ANALYTIC = {
    "q1q2": marginal_q1q2,
    "p1p2": marginal_p1p2,
    "q1p2": marginal_q1p2,
    "q2p1": marginal_q2p1,
}


def analytic_marginal(plane: str):
    """Closed-form marginal for the plane, or None when only quadrature applies."""
    plane_axes(plane)
    return _ANALYTIC.get(plane)


def marginal_numeric(
    n: int,
    l: int,
    plane: str,
    u,
    v,
    params: Params = DEFAULT_PARAMS,
    order: int = 40,
    check: bool = True,
    tol: float = 1e-9,
    normalized: bool = False,
) -> float:
    """Marginal density by tensor Gauss-Hermite quadrature of the Wigner
    function over the complementary coordinate pair.

    With the envelope-matched weight the integrand is a polynomial, so the
    default order is exact for all tested indices; `check` compares against
    order+8 and warns on disagreement."""
    _check_indices(n, l)
    if order < 20 + 4 * max(n, l):
        raise ValueError("quadrature order below the safe floor 20 + 4*max(n, l)")
    ax0, ax1 = plane_axes(plane)
    over = complement_axes(plane)
    idx = WignerIndex.diagonal(n, l)

    def f(q1, q2, p1, p2):
        return eval_wigner_xy(idx, q1, q2, p1, p2, params)

    fixed = {ax0: float(u), ax1: float(v)}
    value = integrate_plane(f, over, params, order, fixed)
    if check:
        again = integrate_plane(f, over, params, order + 8, fixed)
        if abs(again - value) > tol * max(1.0, abs(value)):
            warnings.warn(
                f"marginal quadrature moved by {abs(again - value):.3e} "
                f"between orders {order} and {order + 8}",
                QuadratureWarning,
                stacklevel=2,
            )
        value = again
    return _maybe_normalize(value, params, normalized)


def marginal_grid(
    n: int,
    l: int,
    plane: str,
    xs,
    ys,
    params: Params = DEFAULT_PARAMS,
    order: int = 40,
    method: str = "auto",
    normalized: bool = False,
):
    """Marginal density sampled on the xs-by-ys grid of the plane.

    method 'analytic' requires a closed form; 'quadrature' forces the
    integral route (row-chunked to bound memory); 'auto' prefers the closed
    form when one exists."""
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    fn = analytic_marginal(plane)
    if method not in ("auto", "analytic", "quadrature"):
        raise ValueError("method must be auto, analytic or quadrature")
    if method == "analytic" and fn is None:
        raise ValueError(f"no closed form on plane {plane!r}; use quadrature")
    if fn is not None and method != "quadrature":
        return np.asarray(fn(n, l, xs.reshape(-1, 1), ys.reshape(1, -1), params, normalized))

    from .quad import axis_scale, hermite_rule

    _check_indices(n, l)
    ax0, ax1 = plane_axes(plane)
    c0, c1 = complement_axes(plane)
    rule = hermite_rule(order)
    s0, s1 = axis_scale(c0, params), axis_scale(c1, params)
    u0 = (rule.nodes * s0).reshape(1, -1, 1)
    u1 = (rule.nodes * s1).reshape(1, 1, -1)
    wexp = rule.weights * np.exp(rule.nodes**2)
    idx = WignerIndex.diagonal(n, l)
    out = np.empty((xs.size, ys.size))
    for i, x in enumerate(xs):
        coords = {
            ax0: float(x),
            ax1: ys.reshape(-1, 1, 1),
            c0: u0,
            c1: u1,
        }
        vals = eval_wigner_xy(idx, coords["q1"], coords["q2"], coords["p1"], coords["p2"], params)
        out[i, :] = s0 * s1 * np.einsum("jkl,k,l->j", vals, wexp, wexp)
    return out / params.h_squared if normalized else out


# ---------------------------------------------------------------------------
# generating function of the position-plane marginals


def marginal_generating_q(gp: GenParams, q1, q2, params: Params = DEFAULT_PARAMS):
    """Momentum-integrated generating function on the position plane:
    pi (hbar/gamma)^2 e^{-rho^2} Q_alpha Q_beta."""
    g = params.gamma
    Z = (q1 + 1j * q2) / g
    Zb = (q1 - 1j * q2) / g
    rho2 = (Z * Zb).real
    qa = np.exp(-gp.alpha1 * gp.alpha2 + 1j * (gp.alpha1 * Zb - gp.alpha2 * Z))
    qb = np.exp(-gp.beta1 * gp.beta2 - 1j * (gp.beta1 * Z - gp.beta2 * Zb))
    return math.pi * (params.hbar / g) ** 2 * np.exp(-rho2) * qa * qb


def marginal_q1q2_from_generating(
    n: int, l: int, q1, q2, params: Params = DEFAULT_PARAMS
):
    """Position-plane marginal recovered from the generating function by
    exact parameter-polynomial extraction (independent of the closed form)."""
    _check_indices(n, l)
    g = params.gamma
    Z = complex(q1, q2) / g
    Zb = Z.conjugate()
    rho2 = (Z * Zb).real

    def j_factor(zc):
        # n! l! * coefficient of x^n y^l in exp(-x*y + i*(x*conj(zc) - y*zc))
        total = 0.0j
        for u in range(min(n, l) + 1):
            total += (
                (-1.0) ** u
                * (1j * zc.conjugate()) ** (n - u)
                * (-1j * zc) ** (l - u)
                / (factf(u) * factf(n - u) * factf(l - u))
            )
        return factf(n) * factf(l) * total

    j1 = j_factor(Z)
    # the second factor has the mirrored sign pattern: exactly the conjugate
    j2 = j1.conjugate()
    val = (
        4.0
        / (factf(n) * factf(l))
        * math.pi
        * (params.hbar / g) ** 2
        * math.exp(-rho2)
        * (j1 * j2).real
    )
    return val


# ---------------------------------------------------------------------------
# reference wavefunctions (symmetric gauge, polar coordinates)


def landau_psi(n_r: int, j: int, q1, q2, params: Params = DEFAULT_PARAMS):
    """Normalized symmetric-gauge eigenfunction with radial number n_r and
    angular momentum quantum number j, evaluated at Cartesian coordinates."""
    if n_r < 0:
        raise ValueError("radial quantum number must be nonnegative")
    g = params.gamma
    r = np.hypot(q1, q2)
    theta = np.arctan2(q2, q1)
    rho = r / g
    rho2 = rho * rho
    norm = math.sqrt(factf(n_r) / (math.pi * factf(n_r + abs(j)))) / g
    return (
        norm
        * rho ** abs(j)
        * np.exp(1j * j * theta)
        * np.exp(-rho2 / 2.0)
        * laguerre(n_r, abs(j), rho2)
    )


def landau_energy(n_r: int, j: int, params: Params = DEFAULT_PARAMS) -> float:
    """Eigenvalue hbar*omega*(n_r + 1/2 + (|j| - j)/2) of the wavefunction above."""
    return params.hbar * params.omega * (n_r + 0.5 + (abs(j) - j) / 2.0)
