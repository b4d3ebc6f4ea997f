"""Physical parameters, coordinate systems and the linear maps among them.

Three coordinate systems are used throughout:

* canonical coordinates ``(q1, q2, p1, p2)``;
* complex coordinates ``z = (q1 + i q2)/sqrt(2)``, ``p = (p1 - i p2)/sqrt(2)``
  and their conjugates;
* dimensionless ladder coordinates ``(a, abar, b, bbar)`` in which the star
  product has unit coefficients and the Landau Hamiltonian is
  ``hbar*omega*a*abar``.

The ladder map and its inverse are linear; ``ladder_matrix`` returns the
4x4 matrix ``B`` with ``y = B x`` for ``y = (q1,q2,p1,p2)``,
``x = (a, b, abar, bbar)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np


@dataclass(frozen=True)
class Params:
    """Physical parameters: mass, cyclotron frequency omega = qB/mc, hbar.

    Derived quantities: ``gamma = sqrt(2*hbar/(m*omega))`` (magnetic length)
    and ``kappa = m*omega/2``; they satisfy ``gamma**2 * kappa == hbar``.
    """

    m: float = 1.0
    omega: float = 2.0
    hbar: float = 1.0

    def __post_init__(self):
        for name in ("m", "omega", "hbar"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")

    @property
    def gamma(self) -> float:
        return math.sqrt(2.0 * self.hbar / (self.m * self.omega))

    @property
    def kappa(self) -> float:
        return 0.5 * self.m * self.omega

    @property
    def h_squared(self) -> float:
        """Normalization constant (2*pi*hbar)**2 carried by every Wigner integral."""
        return (2.0 * math.pi * self.hbar) ** 2


DEFAULT_PARAMS = Params()


class PhasePoint(NamedTuple):
    q1: float
    q2: float
    p1: float
    p2: float


class LadderPoint(NamedTuple):
    """Dimensionless ladder values; conjugates are implicit."""

    a: complex
    b: complex


@dataclass(frozen=True)
class SymplecticParams:
    """Parameters (u, v, xi, eta) of the scaling/rotation family acting on ladder coordinates."""

    u: float
    v: float
    xi: float
    eta: float

    def __post_init__(self):
        if self.u == 0 or self.v == 0:
            raise ValueError("u and v must be nonzero")


ORIGIN = PhasePoint(0.0, 0.0, 0.0, 0.0)


def to_complex(pt: PhasePoint):
    """Return (z, p, zbar, pbar) for the phase point."""
    q1, q2, p1, p2 = pt
    s = 1.0 / math.sqrt(2.0)
    z = s * (q1 + 1j * q2)
    p = s * (p1 - 1j * p2)
    return z, p, z.conjugate(), p.conjugate()


def from_complex(z: complex, p: complex) -> PhasePoint:
    s = math.sqrt(2.0)
    return PhasePoint((s * z).real, (s * z).imag, (s * p).real, -(s * p).imag)


def to_ladder(pt: PhasePoint, params: Params = DEFAULT_PARAMS) -> LadderPoint:
    """Annihilation values a, b at a phase point.

    a = [(p1 + kappa*q2) + i(p2 - kappa*q1)] / (2*kappa*gamma)
    b = [(kappa*q2 - p1) + i(p2 + kappa*q1)] / (2*kappa*gamma)
    """
    q1, q2, p1, p2 = pt
    k = params.kappa
    d = 2.0 * k * params.gamma
    a = complex(p1 + k * q2, p2 - k * q1) / d
    b = complex(k * q2 - p1, p2 + k * q1) / d
    return LadderPoint(a, b)


def from_ladder(lp: LadderPoint, params: Params = DEFAULT_PARAMS) -> PhasePoint:
    """Inverse of `to_ladder` via the matrix B."""
    a, b = lp
    x = np.array([a, b, a.conjugate(), b.conjugate()])
    y = ladder_matrix(params) @ x
    return PhasePoint(*(float(c.real) for c in y))


def ladder_matrix(params: Params = DEFAULT_PARAMS) -> np.ndarray:
    """Matrix B with (q1,q2,p1,p2) = B (a, b, abar, bbar); det B = -hbar**2."""
    g = 0.5 * params.gamma
    k = params.kappa
    return g * np.array(
        [
            [1j, -1j, -1j, 1j],
            [1, 1, 1, 1],
            [k, -k, k, -k],
            [-1j * k, -1j * k, 1j * k, 1j * k],
        ]
    )


def scaling_matrix(sp: SymplecticParams) -> np.ndarray:
    """Diagonal action on (a, b, abar, bbar)."""
    return np.diag(
        [
            sp.u * np.exp(1j * sp.xi),
            sp.v * np.exp(1j * sp.eta),
            np.exp(-1j * sp.xi) / sp.u,
            np.exp(-1j * sp.eta) / sp.v,
        ]
    )


def symplectic_C(sp: SymplecticParams, params: Params = DEFAULT_PARAMS) -> np.ndarray:
    """Canonical-coordinate matrix C = B A B^{-1} of the four-parameter family.

    C is symplectic: C J0 C^T = J0 with J0 the standard symplectic matrix,
    and det C = 1.
    """
    B = ladder_matrix(params)
    A = scaling_matrix(sp)
    return B @ A @ np.linalg.inv(B)


def standard_symplectic_matrix() -> np.ndarray:
    J = np.zeros((4, 4))
    J[0, 2] = J[1, 3] = 1.0
    J[2, 0] = J[3, 1] = -1.0
    return J


def symplectic_blocks(sp: SymplecticParams) -> tuple[np.ndarray, np.ndarray]:
    """Closed-form 2x2 blocks (M, N) with C = (1/4) [[M, -N/kappa], [kappa N, M]]."""
    up, um = sp.u + 1.0 / sp.u, sp.u - 1.0 / sp.u
    vp, vm = sp.v + 1.0 / sp.v, sp.v - 1.0 / sp.v
    cxi, sxi = math.cos(sp.xi), math.sin(sp.xi)
    ceta, seta = math.cos(sp.eta), math.sin(sp.eta)
    cp = up * cxi + vp * ceta + 1j * (um * sxi + vm * seta)
    cm = up * cxi - vp * ceta + 1j * (um * sxi - vm * seta)
    sp_ = up * sxi + vp * seta - 1j * (um * cxi + vm * ceta)
    sm = up * sxi - vp * seta - 1j * (um * cxi - vm * ceta)
    M = np.array([[cp, -sm], [sm, cp]])
    N = np.array([[sp_, cm], [-cm, sp_]])
    return M, N
