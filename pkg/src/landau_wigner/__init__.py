"""Star-product toolkit for Landau-level Wigner functions.

Everything is built on the dimensionless ladder coordinates in which the
star product has unit coefficients: exact Gaussian-polynomial star algebra,
an abstract normal-form ladder algebra with a vacuum projector, closed-form
Wigner evaluators and their generating function, analytic and quadrature
marginal densities, symmetry and gauge transforms, and tensor Gauss-Hermite
quadrature.  A FastAPI service (`landau_wigner.api`) exposes the operations;
the CLI is a thin client of that service.
"""

__version__ = "0.1.0"

from .marginals import (
    marginal_numeric,
    marginal_p1p2,
    marginal_q1p2,
    marginal_q1q2,
    marginal_q2p1,
)
from .moyal import (
    GaussPolyFn,
    SmoothFn,
    StarClassError,
    moyal_bracket,
    poisson_bracket,
    star_exact,
    star_numeric,
    star_power,
)
from .phasespace import DEFAULT_PARAMS, Params, PhasePoint, SymplecticParams
from .wigner import GenParams, WignerIndex, eval_generating, eval_ground, eval_wigner

__all__ = [
    "__version__",
    "DEFAULT_PARAMS",
    "GaussPolyFn",
    "GenParams",
    "Params",
    "PhasePoint",
    "SmoothFn",
    "StarClassError",
    "SymplecticParams",
    "WignerIndex",
    "eval_generating",
    "eval_ground",
    "eval_wigner",
    "marginal_numeric",
    "marginal_p1p2",
    "marginal_q1p2",
    "marginal_q1q2",
    "marginal_q2p1",
    "moyal_bracket",
    "poisson_bracket",
    "star_exact",
    "star_numeric",
    "star_power",
]
