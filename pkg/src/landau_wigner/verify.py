"""Named verification suites behind the `verify` command and endpoint.

Each suite returns a list of CheckResult rows; a run passes when every row
does.  Exact checks report residual 0.0 or the offending magnitude; numeric
checks report the measured residual against the suite tolerance.  Tolerances
may be overridden through environment variables
``LANDAU_WIGNER_TOL_<NAME>`` (numeric knobs only).
"""

from __future__ import annotations

import math
import os
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from . import gauge as gaugemod
from . import marginals as margmod
from . import staralg
from .exactnum import ExactComplex
from .moyal import (
    GaussPolyFn,
    SmoothFn,
    ladder,
    moyal_bracket,
    poisson_bracket,
    qp_to_ladder,
    star_exact,
    star_numeric,
    star_power,
)
from .phasespace import (
    DEFAULT_PARAMS,
    Params,
    PhasePoint,
    SymplecticParams,
    from_ladder,
    LadderPoint,
    standard_symplectic_matrix,
    symplectic_C,
)
from .qpoly import QPPoly, parse_qp_poly
from .quad import integrate_phase_space
from .specialfn import (
    ladder_diagonal_poly,
    laguerre,
    laguerre_double_argument_residual,
    laguerre_poly,
    laguerre_poly_rodrigues,
    verify_rodrigues_shift_identity,
)
from .symmetry import (
    check_symplectic_invariance,
    discrete_residuals,
    ladder_action,
    translation_witness,
)
from .wigner import (
    WignerIndex,
    angular_momentum_fn,
    eval_wigner,
    eval_wigner_xy,
    hamiltonian_fn,
    wigner_gausspoly,
    wigner_sector_split,
)

DEFAULT_TOLERANCES = {
    "quad_rel": 1e-10,
    "closedness": 1e-8,
    "numeric_mirror": 1e-6,
    "symmetry": 1e-12,
    "marginal_match": 1e-8,
    "marginal_norm": 1e-6,
    "gauge_norm": 1e-6,
    "gauge_kernel": 1e-13,
    "gauge_truncated": 1e-6,
    "identities": 1e-10,
    "generating": 1e-8,
}

_ENV_PREFIX = "LANDAU_WIGNER_TOL_"


def tolerance(name: str, overrides: dict | None = None) -> float:
    if overrides and name in overrides:
        return float(overrides[name])
    env = os.environ.get(_ENV_PREFIX + name.upper())
    if env is not None:
        return float(env)
    return DEFAULT_TOLERANCES[name]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    residual: float | None = None
    detail: str = ""


def _check(name: str, residual: float, tol: float, detail: str = "") -> CheckResult:
    return CheckResult(name, bool(residual <= tol), float(residual), detail)


def _exact(name: str, ok: bool, detail: str = "") -> CheckResult:
    return CheckResult(name, bool(ok), 0.0 if ok else None, detail)


def _random_poly(rng: random.Random, degree: int = 2, nterms: int = 4) -> GaussPolyFn:
    terms = {}
    for _ in range(nterms):
        key = tuple(rng.randint(0, degree) for _ in range(4))
        terms[key] = ExactComplex(
            Fraction(rng.randint(-4, 4), rng.randint(1, 3)),
            Fraction(rng.randint(-4, 4), rng.randint(1, 3)),
        )
    return GaussPolyFn(terms)


def _random_points(seed: int, count: int, scale: float = 1.0) -> list[PhasePoint]:
    rng = np.random.default_rng(seed)
    return [PhasePoint(*rng.normal(scale=scale, size=4)) for _ in range(count)]


# ---------------------------------------------------------------------------


def suite_algebra(max_index: int = 4, params: Params = DEFAULT_PARAMS, tols=None) -> list[CheckResult]:
    rng = random.Random(20240917)
    out = []

    ok = True
    for _ in range(8):
        f, g, h = (_random_poly(rng) for _ in range(3))
        ok = ok and star_exact(star_exact(f, g), h) == star_exact(f, star_exact(g, h))
    out.append(_exact("associativity on random polynomial triples", ok))

    ok = True
    for _ in range(8):
        f, g = _random_poly(rng), _random_poly(rng)
        ok = ok and star_exact(f, g).conjugate() == star_exact(g.conjugate(), f.conjugate())
    out.append(_exact("conjugation reverses star factors", ok))

    a, abar, b, bbar = (ladder(v) for v in ("a", "abar", "b", "bbar"))
    one = GaussPolyFn.constant(1)
    ok = (
        moyal_bracket(a, abar) == one
        and moyal_bracket(b, bbar) == one
        and moyal_bracket(a, b).is_zero
        and moyal_bracket(a, bbar).is_zero
    )
    out.append(_exact("ladder bracket relations", ok))

    ok = True
    for k in range(1, 11):
        target = GaussPolyFn.monomial((0, k - 1, 0, 0), k)
        ok = ok and moyal_bracket(a, GaussPolyFn.monomial((0, k, 0, 0))) == target
    out.append(_exact("bracket with creator powers", ok))

    # velocity components in the symmetric gauge
    k = Fraction(params.kappa)
    m = Fraction(params.m)
    v1 = qp_to_ladder(
        QPPoly({(0, 0, 1, 0): Fraction(1) / m, (0, 1, 0, 0): k / m}), params
    )
    v2 = qp_to_ladder(
        QPPoly({(0, 0, 0, 1): Fraction(1) / m, (1, 0, 0, 0): -k / m}), params
    )
    target = GaussPolyFn.constant(
        ExactComplex(0, Fraction(params.hbar) * Fraction(params.omega) / m)
    )
    out.append(_exact("velocity bracket equals i*hbar*omega/m", moyal_bracket(v1, v2) == target))

    ok = True
    span = [
        QPPoly.constant(1),
        QPPoly.coordinate("q1"),
        QPPoly.coordinate("p2"),
        parse_qp_poly("q1*q2"),
        parse_qp_poly("p1*p2"),
        parse_qp_poly("q1*p1"),
    ]
    for f_qp in span:
        f = qp_to_ladder(f_qp, params)
        for _ in range(2):
            g1, g2 = _random_poly(rng), _random_poly(rng)
            lhs = poisson_bracket(f, star_exact(g1, g2), params)
            rhs = star_exact(poisson_bracket(f, g1, params), g2) + star_exact(
                g1, poisson_bracket(f, g2, params)
            )
            ok = ok and lhs == rhs
            ok = ok and moyal_bracket(f, g1) == poisson_bracket(f, g1, params).scale(
                ExactComplex(0, Fraction(params.hbar))
            )
    out.append(_exact("quadratic span acts as derivation / bracket equality", ok))

    g_aff = GaussPolyFn(
        {(0, 0, 0, 0): Fraction(1, 3), (1, 0, 0, 0): 2, (0, 0, 1, 0): Fraction(-1, 2)}
    )
    pw = GaussPolyFn.constant(1)
    for _ in range(5):
        pw = pw * g_aff
    out.append(_exact("star power of affine function is pointwise power", star_power(g_aff, 5) == pw))

    ok = star_power(GaussPolyFn.monomial((0, 3, 0, 0)), 1) == GaussPolyFn.monomial((0, 3, 0, 0))
    for kk in range(2, 5):
        ok = ok and star_power(abar, kk) == GaussPolyFn.monomial((0, kk, 0, 0))
        ok = ok and star_power(bbar, kk) == GaussPolyFn.monomial((0, 0, 0, kk))
    out.append(_exact("creator star powers collapse to pointwise powers", ok))

    # closedness: integral of f*g - f g vanishes
    tol = tolerance("closedness", tols)
    f = GaussPolyFn({(1, 1, 0, 0): 1, (0, 0, 1, 1): Fraction(1, 2)}, gauss_s=2)
    g = GaussPolyFn({(2, 0, 0, 0): 1, (0, 1, 0, 1): Fraction(1, 3), (0, 0, 0, 0): 1})
    star_fg = star_exact(g, f)  # polynomial factor on the left keeps the class
    plain = g * f
    val_star = integrate_phase_space(lambda *ax: star_fg.evaluate_qp(*ax, params=params), params, 24)
    val_plain = integrate_phase_space(lambda *ax: plain.evaluate_qp(*ax, params=params), params, 24)
    scale = max(1.0, abs(val_plain))
    out.append(
        _check("closedness: trace of star product equals plain trace", abs(val_star - val_plain) / scale, tol)
    )
    return out


def suite_eigen(max_index: int = 5, params: Params = DEFAULT_PARAMS, tols=None) -> list[CheckResult]:
    out = []
    ok = True
    energies = {}
    for n in range(max_index + 1):
        for l in range(max_index + 1):
            res = staralg.eigen_check(n, l)
            energies.setdefault(n, set()).add(res.energy)
            ok = ok and res.energy == Fraction(2 * n + 1, 2) and res.angular_momentum == l - n
    out.append(_exact(f"ladder-algebra two-sided eigen equations (n,l <= {max_index})", ok))
    out.append(
        _exact(
            "energy independent of the angular index",
            all(len(v) == 1 for v in energies.values()),
        )
    )

    hl, jj = hamiltonian_fn(params), angular_momentum_fn(params)
    hw = Fraction(params.hbar) * Fraction(params.omega)
    hb = Fraction(params.hbar)
    ok = True
    for n in range(max_index + 1):
        for l in range(max_index + 1):
            w = wigner_gausspoly(WignerIndex.diagonal(n, l))
            e_n = hw * Fraction(2 * n + 1, 2)
            j_nl = hb * Fraction(l - n)
            ok = ok and (star_exact(hl, w) - w.scale(e_n)).is_zero
            ok = ok and (star_exact(w, hl) - w.scale(e_n)).is_zero
            ok = ok and (star_exact(jj, w) - w.scale(j_nl)).is_zero
            ok = ok and (star_exact(w, jj) - w.scale(j_nl)).is_zero
    out.append(_exact(f"function-class star eigen equations (n,l <= {max_index})", ok))
    return out


def suite_projection(max_index: int = 4, params: Params = DEFAULT_PARAMS, tols=None) -> list[CheckResult]:
    out = []
    ok = True
    pairs = 0
    for n in range(max_index + 1):
        for l in range(max_index + 1):
            w1 = staralg.diagonal_wigner_element(n, l)
            for n2 in range(max_index + 1):
                for l2 in range(max_index + 1):
                    w2 = staralg.diagonal_wigner_element(n2, l2)
                    expect = w1 if (n, l) == (n2, l2) else staralg.LadderElement.zero()
                    ok = ok and staralg.star_product(w1, w2) == expect
                    pairs += 1
    out.append(_exact(f"projection identity over {pairs} index pairs", ok))

    ok = all(staralg.verify_ladder(n, l) for n in range(max_index + 1) for l in range(max_index + 1))
    out.append(_exact("ladder structure relations", ok))

    tol = tolerance("numeric_mirror", tols)
    worst = 0.0
    mirror_pairs = [
        (0, 0, 0, 0),
        (1, 0, 1, 0),
        (2, 1, 2, 1),
        (2, 1, 1, 2),
        (0, 0, 2, 2),
        (4, 4, 4, 4),
        (4, 3, 3, 4),
        (0, 0, 4, 4),
        (3, 2, 3, 2),
    ]
    pts = _mirror_points(params)
    cache: dict[tuple[int, int], SmoothFn] = {}

    def smooth(n, l):
        if (n, l) not in cache:
            fa, fb, sc = wigner_sector_split(WignerIndex.diagonal(n, l))
            cache[(n, l)] = SmoothFn.from_sector_product(fa, fb, sc, params)
        return cache[(n, l)]

    for n, l, n2, l2 in mirror_pairs:
        for pt in pts:
            res = star_numeric(smooth(n, l), smooth(n2, l2), pt, 30, params)
            delta = 1.0 if (n, l) == (n2, l2) else 0.0
            target = delta * eval_wigner(WignerIndex.diagonal(n, l), pt, params)
            worst = max(worst, abs(res.value - target))
    out.append(
        _check("truncated-series mirror of the projection identity", worst, tol)
    )
    return out


def _mirror_points(params: Params) -> list[PhasePoint]:
    """Sample points inside the convergence region of the order-30 series."""
    pts = []
    for radius2, pa, pb in (
        (10.5, 0.3, -1.1),
        (11.0, 1.9, 0.4),
        (11.5, -0.7, 2.3),
        (12.0, 2.9, -2.0),
        (10.8, -2.2, 0.9),
    ):
        a = math.sqrt(radius2) * np.exp(1j * pa)
        b = math.sqrt(radius2) * np.exp(1j * pb)
        pts.append(from_ladder(LadderPoint(a, b), params))
    return pts


def suite_normalization(max_index: int = 3, params: Params = DEFAULT_PARAMS, tols=None) -> list[CheckResult]:
    out = []
    tol = tolerance("quad_rel", tols)
    h2 = params.h_squared
    idxs = [(n, l) for n in range(max_index + 1) for l in range(max_index + 1)]
    order = 20 + 2 * max(0, max_index - 3)

    def grid_fields(envelope_s: float):
        from .quad import axis_scale, hermite_rule

        rule = hermite_rule(order)
        shaped, wexp = [], []
        for i, ax in enumerate(("q1", "q2", "p1", "p2")):
            shape = [1, 1, 1, 1]
            shape[i] = order
            shaped.append((rule.nodes * axis_scale(ax, params, envelope_s)).reshape(shape))
            wexp.append(rule.weights * np.exp(rule.nodes**2))
        scale = float(np.prod([axis_scale(ax, params, envelope_s) for ax in ("q1", "q2", "p1", "p2")]))
        fields = {
            (n, l): eval_wigner_xy(WignerIndex.diagonal(n, l), *shaped, params)
            for n, l in idxs
        }
        return fields, wexp, scale

    fields, wexp, scale = grid_fields(2.0)
    worst = 0.0
    for n, l in idxs:
        val = scale * np.einsum("ijkl,i,j,k,l->", fields[(n, l)], *wexp)
        worst = max(worst, abs(val - h2) / h2)
    out.append(_check(f"normalization integral over {len(idxs)} states", worst, tol))

    fields, wexp, scale = grid_fields(4.0)
    worst = 0.0
    for n, l in idxs:
        for n2, l2 in idxs:
            val = scale * np.einsum("ijkl,i,j,k,l->", fields[(n, l)] * fields[(n2, l2)], *wexp)
            target = h2 if (n, l) == (n2, l2) else 0.0
            worst = max(worst, abs(val - target) / h2)
    out.append(_check(f"orthogonality integrals over {len(idxs) ** 2} pairs", worst, tol))

    tol_m = tolerance("marginal_norm", tols)
    from .quad import integrate_plane

    worst = 0.0
    for n, l in [(0, 0), (2, 1), (3, 3)]:
        for plane in margmod.PLANES:
            fn = margmod.analytic_marginal(plane)
            ax = margmod.plane_axes(plane)
            if fn is None:
                continue

            def field(q1, q2, p1, p2, _fn=fn, _ax=ax):
                coords = {"q1": q1, "q2": q2, "p1": p1, "p2": p2}
                return _fn(n, l, coords[_ax[0]], coords[_ax[1]], params)

            val = integrate_plane(field, ax, params, order=40)
            worst = max(worst, abs(val - h2) / h2)
    out.append(_check("marginal densities integrate to h^2", worst, tol_m))

    tol_q = tolerance("marginal_match", tols)
    rng = np.random.default_rng(3)
    worst = 0.0
    for plane in ("q1q2", "p1p2", "q1p2", "q2p1"):
        fn = margmod.analytic_marginal(plane)
        for n, l in [(0, 0), (2, 1), (1, 3)]:
            u, v = rng.normal(size=2)
            va = fn(n, l, u, v, params)
            vq = margmod.marginal_numeric(n, l, plane, u, v, params, order=40, check=False)
            worst = max(worst, abs(va - vq))
    out.append(_check("closed-form marginals match the quadrature oracle", worst, tol_q))
    return out


def suite_symmetry(max_index: int = 5, params: Params = DEFAULT_PARAMS, tols=None) -> list[CheckResult]:
    out = []
    tol = tolerance("symmetry", tols)
    pts = _random_points(7, 100)

    worst = 0.0
    for n, l in [(0, 1), (2, 1), (3, 2), (min(4, max_index), min(5, max_index))]:
        for pt in pts[:25]:
            worst = max(worst, max(discrete_residuals(n, l, pt, params).values()))
    out.append(_check("inversion / time-reversal / parity / swap identities", worst, tol))

    rng = np.random.default_rng(11)
    j0 = standard_symplectic_matrix()
    worst = 0.0
    for _ in range(100):
        sp = SymplecticParams(
            u=float(rng.uniform(0.2, 3.0)) * (1 if rng.random() < 0.5 else -1),
            v=float(rng.uniform(0.2, 3.0)),
            xi=float(rng.uniform(-math.pi, math.pi)),
            eta=float(rng.uniform(-math.pi, math.pi)),
        )
        c = symplectic_C(sp, params)
        worst = max(worst, float(np.max(np.abs(c @ j0 @ c.T - j0))))
        worst = max(worst, abs(np.linalg.det(c) - 1.0))
    out.append(_check("symplectic condition over 100 parameter draws", worst, tol))

    worst = 0.0
    for sp in (
        SymplecticParams(1.0, 1.0, 0.7, 0.7),
        SymplecticParams(2.0, 0.5, 0.3, 1.1),
        SymplecticParams(-1.5, 2.5, -0.9, 2.2),
    ):
        for n, l in [(0, 0), (2, 1), (min(4, max_index), min(4, max_index))]:
            worst = max(worst, check_symplectic_invariance(n, l, sp, pts[:20], params))
    out.append(_check("scaling-family invariance in ladder coordinates", worst, tol))

    worst = 0.0
    hl, jj = hamiltonian_fn(params), angular_momentum_fn(params)
    sp = SymplecticParams(1.7, 0.6, 0.4, -1.3)
    for pt in pts[:20]:
        from .phasespace import to_ladder

        lp = to_ladder(pt, params)
        a2, b2, ab2, bb2 = ladder_action(sp, lp.a, lp.b)
        for fn in (hl, jj):
            before = fn.evaluate(lp.a, lp.b)
            after = fn.evaluate(a2, b2, ab2, bb2)
            worst = max(worst, abs(after - before))
    out.append(_check("invariance of the two conserved quadratics", worst, tol))

    witness = translation_witness(1, 0, (0.8, -0.5), PhasePoint(0.3, 0.2, -0.4, 0.6), params)
    out.append(
        CheckResult(
            "translation witness changes the state (guard)",
            witness > 1e-3,
            witness,
            "expected nonzero",
        )
    )
    return out


def suite_gauge(max_index: int = 2, params: Params = DEFAULT_PARAMS, tols=None) -> list[CheckResult]:
    out = []
    g = gaugemod.landau_gauge_fn(params, +1)

    from .moyal import ladder_to_qp

    h_qp = ladder_to_qp(hamiltonian_fn(params), params)
    h_prime = gaugemod.conjugate_function(g, h_qp, params)
    mw = Fraction(params.m) * Fraction(params.omega)
    expected = QPPoly(
        {
            (0, 0, 2, 0): Fraction(1, 2) / Fraction(params.m),
            (0, 0, 0, 2): Fraction(1, 2) / Fraction(params.m),
            (1, 0, 0, 1): -mw / Fraction(params.m),
            (2, 0, 0, 0): mw * mw / (2 * Fraction(params.m)),
        }
    )
    out.append(_exact("conjugated Hamiltonian lands in the Landau gauge", h_prime == expected))

    p1p = gaugemod.conjugate_momentum(g, 1, params)
    p2p = gaugemod.conjugate_momentum(g, 2, params)
    kq = Fraction(params.hbar) * Fraction(g.coupling)
    ok = p1p == QPPoly.coordinate("p1") - QPPoly({(0, 1, 0, 0): kq})
    ok = ok and p2p == QPPoly.coordinate("p2") - QPPoly({(1, 0, 0, 0): kq})
    out.append(_exact("conjugated momenta shift by the gauge gradient", ok))

    ok = True
    worst = 0.0
    for n, l in [(0, 0), (1, 0), (1, 1)]:
        exact_zero, bad = gaugemod.transformed_eigen_residual(g, n, l, params)
        ok = ok and exact_zero
        worst = max(worst, bad)
    out.append(_exact("transformed pair satisfies the same star eigen equation", ok, f"max dev {worst}"))

    tol = tolerance("gauge_norm", tols)
    worst = 0.0
    for n, l in [(0, 0), (1, 1), (2, 2)][: max_index + 1]:
        val = gaugemod.transformed_normalization(g, n, l, params, order=16)
        worst = max(worst, abs(val - params.h_squared) / params.h_squared)
    out.append(_check("normalization preserved under conjugation", worst, tol))

    tol = tolerance("gauge_kernel", tols)
    rng = np.random.default_rng(5)
    worst = 0.0
    f1 = parse_qp_poly("q1^2*q2 - 0.25*q2^3 + 1")
    f2 = parse_qp_poly("q1*q2^2 + 2*q1")
    for _ in range(5):
        y = tuple(rng.normal(scale=0.7, size=2))
        pt = PhasePoint(*rng.normal(size=4))
        worst = max(worst, gaugemod.verify_kernel_identity(f1, f2, y, pt, params))
    out.append(_check("plane-wave sandwich identity", worst, tol))

    tol = tolerance("gauge_truncated", tols)
    gsmall = gaugemod.GaugeFn(chi=parse_qp_poly("0.3*q1*q2"), coupling=1.0)
    worst = 0.0
    # dyadic shifts keep the exact coefficient arithmetic small
    for y in ((0.375, -0.25), (0.5, 0.125)):
        pt = PhasePoint(*rng.normal(scale=0.8, size=4))
        worst = max(worst, gaugemod.kernel_conjugation_residual(gsmall, y, pt, params, order=8))
    out.append(_check("Taylor-truncated conjugation of the plane wave", worst, tol))
    return out


def suite_identities(max_index: int = 15, params: Params = DEFAULT_PARAMS, tols=None) -> list[CheckResult]:
    out = []
    ok = all(verify_rodrigues_shift_identity(n) for n in range(13))
    out.append(_exact("shift-operator identity, exact coefficients (n <= 12)", ok))

    tol = tolerance("identities", tols)
    worst = 0.0
    for n in range(min(max_index, 15) + 1):
        for x in (0.0, 0.5, 1.0, 2.5, 10.0):
            worst = max(worst, laguerre_double_argument_residual(n, x))
    out.append(_check("double-argument Laguerre sum (n <= 15)", worst, tol))

    ok = all(
        ladder_diagonal_poly(n) == laguerre_poly(n).compose_scale(2).scale((-1) ** n)
        for n in range(13)
    )
    out.append(_exact("diagonal sandwich polynomial equals signed Laguerre(2u)", ok))

    ok = all(
        laguerre_poly_rodrigues(n, alpha) == laguerre_poly(n, alpha)
        for n in range(13)
        for alpha in range(5)
    )
    out.append(_exact("Rodrigues route equals series route", ok))

    tol = tolerance("generating", tols)
    worst = 0.0
    for k in range(7):
        for y in (-0.5, -0.2, 0.1, 0.35, 0.5):
            for x in (0.0, 1.0, 2.5, 4.0):
                partial = sum(laguerre(n, k - n, x) * y**n for n in range(41))
                worst = max(worst, abs(partial - (1 + y) ** k * math.exp(-x * y)))
    out.append(_check("creator-series generating sum (k <= 6)", worst, tol))
    return out


SUITES: dict[str, Callable[..., list[CheckResult]]] = {
    "algebra": suite_algebra,
    "eigen": suite_eigen,
    "projection": suite_projection,
    "normalization": suite_normalization,
    "symmetry": suite_symmetry,
    "gauge": suite_gauge,
    "identities": suite_identities,
}


def run_suite(
    name: str,
    max_index: int | None = None,
    params: Params = DEFAULT_PARAMS,
    tolerances: dict | None = None,
) -> list[CheckResult]:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; expected one of {sorted(SUITES)}")
    fn = SUITES[name]
    if max_index is None:
        return fn(params=params, tols=tolerances)
    return fn(max_index=max_index, params=params, tols=tolerances)
