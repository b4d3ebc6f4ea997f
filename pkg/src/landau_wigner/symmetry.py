"""Discrete transformations and the scaling/rotation invariance family.

The continuous family acts on the ladder coordinates as
``(a, b, abar, bbar) -> (u e^{i xi} a, v e^{i eta} b, a.../u, .../v)`` and
leaves every diagonal Wigner function invariant because only the products
a*abar and b*bbar enter.  The action is exact for arbitrary nonzero (u, v);
for |u| = |v| = 1 the induced canonical-coordinate matrix C is real and the
invariance can also be checked as W(C y) = W(y) on real phase points.
"""

from __future__ import annotations

from typing import Iterable, Literal

import numpy as np

from .phasespace import (
    DEFAULT_PARAMS,
    Params,
    PhasePoint,
    SymplecticParams,
    to_ladder,
)
from .wigner import WignerIndex, eval_wigner, eval_wigner_ladder

DiscreteTransform = Literal["space_inversion", "time_reversal", "parity", "swap"]

DISCRETE_KINDS = ("space_inversion", "time_reversal", "parity", "swap")


def apply_discrete(kind: DiscreteTransform, pt: PhasePoint) -> PhasePoint:
    q1, q2, p1, p2 = pt
    if kind == "space_inversion":
        return PhasePoint(-q1, -q2, p1, p2)
    if kind == "time_reversal":
        return PhasePoint(q1, q2, -p1, -p2)
    if kind == "parity":
        return PhasePoint(-q1, -q2, -p1, -p2)
    if kind == "swap":
        return PhasePoint(q2, q1, p2, p1)
    raise ValueError(f"unknown transform {kind!r}; expected one of {DISCRETE_KINDS}")


def discrete_residuals(n: int, l: int, pt: PhasePoint, params: Params = DEFAULT_PARAMS):
    """Residuals of the index-swap identities under the discrete maps:
    W_nl(-q, p) = W_ln(q, p) = W_nl(q, -p); W_nl(-q, -p) = W_nl(q, p);
    W_nl(swap) = W_ln."""
    wnl = WignerIndex.diagonal(n, l)
    wln = WignerIndex.diagonal(l, n)
    base_nl = eval_wigner(wnl, pt, params)
    base_ln = eval_wigner(wln, pt, params)
    return {
        "space_inversion": abs(
            eval_wigner(wnl, apply_discrete("space_inversion", pt), params) - base_ln
        ),
        "time_reversal": abs(
            eval_wigner(wnl, apply_discrete("time_reversal", pt), params) - base_ln
        ),
        "parity": abs(eval_wigner(wnl, apply_discrete("parity", pt), params) - base_nl),
        "swap": abs(eval_wigner(wnl, apply_discrete("swap", pt), params) - base_ln),
    }


def ladder_action(sp: SymplecticParams, a, b, abar=None, bbar=None):
    """Transformed ladder values (a', b', abar', bbar').

    For u, v off the unit circle the primed conjugate coordinates are no
    longer complex conjugates of the primed coordinates; downstream
    evaluation must treat them as independent."""
    if abar is None:
        abar = np.conjugate(a)
    if bbar is None:
        bbar = np.conjugate(b)
    pa, pb = np.exp(1j * sp.xi), np.exp(1j * sp.eta)
    return sp.u * pa * a, sp.v * pb * b, abar / (sp.u * pa), bbar / (sp.v * pb)


def check_symplectic_invariance(
    n: int,
    l: int,
    sp: SymplecticParams,
    pts: Iterable[PhasePoint],
    params: Params = DEFAULT_PARAMS,
) -> float:
    """Max residual |W_nl(transformed) - W_nl(pt)| over the sample points,
    with the transformation applied exactly in ladder coordinates."""
    idx = WignerIndex.diagonal(n, l)
    worst = 0.0
    for pt in pts:
        lp = to_ladder(pt, params)
        a2, b2, ab2, bb2 = ladder_action(sp, lp.a, lp.b)
        transformed = eval_wigner_ladder(idx, a2, ab2, b2, bb2)
        worst = max(worst, abs(transformed - eval_wigner(idx, pt, params)))
    return worst


def translation_witness(
    n: int, l: int, shift: tuple[float, float], pt: PhasePoint, params: Params = DEFAULT_PARAMS
) -> float:
    """|W_nl(q + c, p - kappa*c*) - W_nl(q, p)| for c* = (c2, -c1).

    The Hamiltonian alone is invariant under this shift but the angular
    momentum is not, so a nonzero value here is expected; the test suite
    uses it as a guard against accidental over-symmetrization."""
    c1, c2 = shift
    k = params.kappa
    moved = PhasePoint(pt.q1 + c1, pt.q2 + c2, pt.p1 - k * c2, pt.p2 + k * c1)
    idx = WignerIndex.diagonal(n, l)
    return abs(eval_wigner(idx, moved, params) - eval_wigner(idx, pt, params))
