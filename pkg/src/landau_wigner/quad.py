"""Deterministic tensor Gauss-Hermite quadrature over phase space.

Nodes and weights come from the Golub-Welsch construction: eigenvalues of
the symmetric tridiagonal Jacobi matrix, weights from the squared first
eigenvector components.  Coordinates are rescaled per axis (q = gamma*x,
p = kappa*gamma*x) so the ground-state envelope becomes exp(-sum x_i^2)
exactly; every normalization and orthogonality integrand is then a
polynomial times the weight and finite order integrates it exactly.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Mapping, Sequence

import numpy as np

from .phasespace import DEFAULT_PARAMS, Params

AXES = ("q1", "q2", "p1", "p2")


class QuadratureWarning(UserWarning):
    """Raised (as a warning) when order doubling moves the result beyond tolerance."""


@dataclass(frozen=True)
class QuadRule:
    """One-dimensional Gauss-Hermite rule: integral of f(x) exp(-x^2) dx."""

    order: int
    nodes: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        if len(self.nodes) != self.order or len(self.weights) != self.order:
            raise ValueError("rule size mismatch")


def _orthonormal_hermite(order: int, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Values of the orthonormal Hermite polynomial of the given degree and
    of its predecessor, via the normalized three-term recurrence."""
    h_prev = np.full_like(x, math.pi ** -0.25)
    if order == 0:
        return h_prev, np.zeros_like(x)
    h_cur = math.sqrt(2.0) * x * h_prev
    for k in range(1, order):
        h_prev, h_cur = h_cur, x * math.sqrt(2.0 / (k + 1)) * h_cur - math.sqrt(
            k / (k + 1.0)
        ) * h_prev
    return h_cur, h_prev


@lru_cache(maxsize=None)
def hermite_rule(order: int) -> QuadRule:
    """Gauss-Hermite rule of the given order (weight exp(-x^2)).

    Golub-Welsch eigenvalues seed the nodes; two Newton polish steps on the
    orthonormal recurrence push them to full double accuracy, and the weights
    follow from w_i = 1 / (order * h_{order-1}(x_i)^2)."""
    if order < 1:
        raise ValueError("order must be >= 1")
    if order == 1:
        return QuadRule(1, np.zeros(1), np.array([math.sqrt(math.pi)]))
    k = np.arange(1, order)
    jacobi = np.diag(np.sqrt(k / 2.0), 1)
    jacobi = jacobi + jacobi.T
    nodes = np.linalg.eigh(jacobi)[0]
    for _ in range(2):
        h_n, h_nm1 = _orthonormal_hermite(order, nodes)
        nodes = nodes - h_n / (math.sqrt(2.0 * order) * h_nm1)
    _, h_nm1 = _orthonormal_hermite(order, nodes)
    weights = 1.0 / (order * h_nm1**2)
    # enforce the exact +/- symmetry of the rule
    nodes = 0.5 * (nodes - nodes[::-1])
    weights = 0.5 * (weights + weights[::-1])
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return QuadRule(order, nodes, weights)


def axis_scale(axis: str, params: Params, envelope_s: float = 2.0) -> float:
    """Axis rescaling that maps exp(-s*(a*abar + b*bbar)) to the rule weight.

    For the ground envelope (s = 2) this is q = gamma*x, p = kappa*gamma*x;
    products of two Wigner factors carry s = 4 and shrink the scale by
    sqrt(2)."""
    base = params.gamma if axis.startswith("q") else params.kappa * params.gamma
    return base * math.sqrt(2.0 / envelope_s)


def integrate_phase_space(
    f: Callable,
    params: Params = DEFAULT_PARAMS,
    order: int = 24,
    envelope_s: float = 2.0,
) -> "float | complex":
    """Tensor quadrature of f(q1, q2, p1, p2) over the full phase space.

    The evaluator must broadcast over numpy arrays.  Exact (to roundoff)
    whenever f is a polynomial times exp(-envelope_s*(a*abar + b*bbar))
    with per-axis polynomial degree < 2*order.
    """
    rule = hermite_rule(order)
    scales = [axis_scale(ax, params, envelope_s) for ax in AXES]
    shaped = []
    for i in range(4):
        shape = [1, 1, 1, 1]
        shape[i] = rule.order
        shaped.append((rule.nodes * scales[i]).reshape(shape))
    values = f(*shaped)
    # divide out the weight exp(-x^2) the rule already accounts for
    expo = 0.0
    for i in range(4):
        shape = [1, 1, 1, 1]
        shape[i] = rule.order
        expo = expo + (rule.nodes**2).reshape(shape)
    integrand = values * np.exp(expo)
    w = rule.weights
    total = np.einsum("ijkl,i,j,k,l->", integrand, w, w, w, w)
    result = float(np.prod(scales)) * complex(total)
    return result if np.iscomplexobj(integrand) else result.real


def integrate_plane(
    f: Callable,
    over: Sequence[str],
    params: Params = DEFAULT_PARAMS,
    order: int = 40,
    fixed: Mapping[str, float] | None = None,
    envelope_s: float = 2.0,
) -> "float | complex":
    """Integrate f over the two axes named in `over`, the remaining two held
    at `fixed` values (default 0)."""
    over = tuple(over)
    if len(over) != 2 or any(ax not in AXES for ax in over) or over[0] == over[1]:
        raise ValueError(f"`over` must name two distinct axes from {AXES}")
    fixed = dict(fixed or {})
    rule = hermite_rule(order)
    s0 = axis_scale(over[0], params, envelope_s)
    s1 = axis_scale(over[1], params, envelope_s)
    x0 = (rule.nodes * s0).reshape(-1, 1)
    x1 = (rule.nodes * s1).reshape(1, -1)
    expo = (rule.nodes**2).reshape(-1, 1) + (rule.nodes**2).reshape(1, -1)
    args = []
    for ax in AXES:
        if ax == over[0]:
            args.append(x0)
        elif ax == over[1]:
            args.append(x1)
        else:
            args.append(fixed.get(ax, 0.0))
    integrand = f(*args) * np.exp(expo)
    total = np.einsum("ij,i,j->", integrand, rule.weights, rule.weights)
    result = s0 * s1 * complex(total)
    return result if np.iscomplexobj(integrand) else result.real


def integrate_plane_checked(
    f: Callable,
    over: Sequence[str],
    params: Params = DEFAULT_PARAMS,
    order: int = 40,
    fixed: Mapping[str, float] | None = None,
    tol: float = 1e-9,
    envelope_s: float = 2.0,
) -> float:
    """`integrate_plane` plus an order/(order+8) stability check; emits a
    QuadratureWarning when the two disagree beyond tol (relative)."""
    coarse = integrate_plane(f, over, params, order, fixed, envelope_s)
    fine = integrate_plane(f, over, params, order + 8, fixed, envelope_s)
    scale = max(1.0, abs(fine))
    if abs(fine - coarse) > tol * scale:
        warnings.warn(
            f"plane quadrature moved by {abs(fine - coarse):.3e} between orders "
            f"{order} and {order + 8}",
            QuadratureWarning,
            stacklevel=2,
        )
    return fine


def integrate_gauss_poly(
    poly_eval: Callable,
    qform: np.ndarray,
    order: int = 24,
) -> complex:
    """Integral over R^4 of poly_eval(y) * exp(-y^T Q y) for SPD Q.

    The coordinates are whitened through the Cholesky factor of Q so the
    tensor Gauss-Hermite rule sees exactly the weight exp(-|x|^2); exact for
    polynomial integrands of per-axis degree < 2*order.
    """
    qform = np.asarray(qform, dtype=float)
    chol = np.linalg.cholesky(qform)
    trans = np.linalg.inv(chol.T)  # y = trans @ x gives y^T Q y = |x|^2
    rule = hermite_rule(order)
    grids = np.meshgrid(*(rule.nodes,) * 4, indexing="ij", sparse=False)
    x = np.stack([g.ravel() for g in grids])
    y = trans @ x
    vals = poly_eval(y[0], y[1], y[2], y[3])
    w = rule.weights
    wprod = np.einsum("i,j,k,l->ijkl", w, w, w, w).ravel()
    det = float(np.prod(np.diag(chol)))
    return complex(np.sum(vals * wprod)) / det


# ---------------------------------------------------------------------------
# grid sampling


@dataclass(frozen=True)
class GridSpec:
    """Rectangular sampling spec on a coordinate plane; remaining axes fixed."""

    plane: tuple[str, str]
    x_range: tuple[float, float]
    y_range: tuple[float, float]
    nx: int
    ny: int
    fixed: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self):
        if self.nx < 2 or self.ny < 2:
            raise ValueError("grid counts must be >= 2")
        for lo, hi in (self.x_range, self.y_range):
            if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
                raise ValueError("grid ranges must be finite and increasing")
        if any(ax not in AXES for ax in self.plane) or self.plane[0] == self.plane[1]:
            raise ValueError(f"plane must name two distinct axes from {AXES}")
        for ax in self.fixed:
            if ax not in AXES or ax in self.plane:
                raise ValueError(f"fixed axis {ax!r} must be an axis outside the plane")


@dataclass(frozen=True)
class FieldGrid:
    """Sampled scalar field: values[i][j] = f at (xs[i], ys[j]) (row-major in x)."""

    xs: np.ndarray
    ys: np.ndarray
    values: np.ndarray
    meta: dict

    def __post_init__(self):
        if not np.all(np.isfinite(self.values)):
            raise ValueError("grid values must be finite")


def sample_grid(
    f: Callable,
    spec: GridSpec,
    params: Params = DEFAULT_PARAMS,
    meta: Mapping | None = None,
) -> FieldGrid:
    """Sample f(q1, q2, p1, p2) on the grid; f must broadcast over arrays."""
    xs = np.linspace(spec.x_range[0], spec.x_range[1], spec.nx)
    ys = np.linspace(spec.y_range[0], spec.y_range[1], spec.ny)
    args = []
    for ax in AXES:
        if ax == spec.plane[0]:
            args.append(xs.reshape(-1, 1))
        elif ax == spec.plane[1]:
            args.append(ys.reshape(1, -1))
        else:
            args.append(float(spec.fixed.get(ax, 0.0)))
    values = np.asarray(f(*args))
    values = np.broadcast_to(values, (spec.nx, spec.ny)).copy()
    if np.iscomplexobj(values):
        if np.max(np.abs(values.imag)) > 1e-12 * max(1.0, np.max(np.abs(values.real))):
            raise ValueError("grid sampling expects a real-valued field")
        values = values.real
    info = {
        "plane": "".join(spec.plane),
        "m": params.m,
        "omega": params.omega,
        "hbar": params.hbar,
        "x_min": spec.x_range[0],
        "x_max": spec.x_range[1],
        "y_min": spec.y_range[0],
        "y_max": spec.y_range[1],
        "nx": spec.nx,
        "ny": spec.ny,
    }
    info.update(meta or {})
    return FieldGrid(xs=xs, ys=ys, values=values, meta=info)
