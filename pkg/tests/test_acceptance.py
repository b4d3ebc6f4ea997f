"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Every tolerance is pinned here; nothing is deferred to runtime calibration.
Exact checks compare coefficients of the exact scalar class, numeric checks
use the stated absolute or relative bounds.
"""

import math
import time
from fractions import Fraction

import numpy as np

from landau_wigner import staralg
from landau_wigner.gauge import (
    landau_gauge_fn,
    transformed_eigen_residual,
    transformed_normalization,
    wigner_from_wavefunction,
)
from landau_wigner.marginals import (
    landau_psi,
    marginal_numeric,
    marginal_q1p2,
    marginal_q1q2,
)
from landau_wigner.moyal import SmoothFn, star_exact, star_numeric
from landau_wigner.phasespace import (
    DEFAULT_PARAMS,
    LadderPoint,
    PhasePoint,
    SymplecticParams,
    from_ladder,
    standard_symplectic_matrix,
    symplectic_C,
)
from landau_wigner.quad import axis_scale, hermite_rule
from landau_wigner.symmetry import check_symplectic_invariance, discrete_residuals
from landau_wigner.wigner import (
    GenParams,
    WignerIndex,
    angular_momentum_fn,
    coherent_residuals,
    derive_wigner_from_G,
    eval_wigner,
    eval_wigner_xy,
    hamiltonian_fn,
    wigner_gausspoly,
    wigner_sector_split,
)

P = DEFAULT_PARAMS
RNG = np.random.default_rng(20240101)


def report(number: int, ok: bool, text: str) -> None:
    print(f"acceptance criterion {number}: {'PASS' if ok else 'FAIL'} - {text}")
    assert ok, f"criterion {number} failed: {text}"


def test_criterion_1_origin_values():
    start = time.perf_counter()
    worst = 0.0
    for n in range(7):
        for l in range(7):
            val = eval_wigner(WignerIndex.diagonal(n, l), PhasePoint(0, 0, 0, 0), P)
            worst = max(worst, abs(val - 4 * (-1) ** (n + l)))
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-14 and elapsed < 1.0
    report(1, ok, f"origin values 4(-1)^(n+l) for n,l <= 6 (worst {worst:.2e}, {elapsed:.2f}s)")


def test_criterion_2_star_eigen_exact():
    start = time.perf_counter()
    hl, jj = hamiltonian_fn(P), angular_momentum_fn(P)
    hw, hb = Fraction(P.hbar) * Fraction(P.omega), Fraction(P.hbar)
    ok = True
    for n in range(6):
        for l in range(6):
            w = wigner_gausspoly(WignerIndex.diagonal(n, l))
            e = hw * Fraction(2 * n + 1, 2)
            j = hb * Fraction(l - n)
            ok = ok and (star_exact(hl, w) - w.scale(e)).is_zero
            ok = ok and (star_exact(w, hl) - w.scale(e)).is_zero
            ok = ok and (star_exact(jj, w) - w.scale(j)).is_zero
            ok = ok and (star_exact(w, jj) - w.scale(j)).is_zero
    elapsed = time.perf_counter() - start
    ok = ok and elapsed < 10.0
    report(2, ok, f"two-sided star eigen equations exact for n,l <= 5 ({elapsed:.2f}s)")


def _mirror_points():
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
        pts.append(from_ladder(LadderPoint(a, b), P))
    return pts


def test_criterion_3_projection():
    algebra_ok = True
    for n in range(5):
        for l in range(5):
            w1 = staralg.diagonal_wigner_element(n, l)
            for n2 in range(5):
                for l2 in range(5):
                    w2 = staralg.diagonal_wigner_element(n2, l2)
                    expect = w1 if (n, l) == (n2, l2) else staralg.LadderElement.zero()
                    algebra_ok = algebra_ok and staralg.star_product(w1, w2) == expect

    cache = {}

    def smooth(n, l):
        if (n, l) not in cache:
            fa, fb, sc = wigner_sector_split(WignerIndex.diagonal(n, l))
            cache[(n, l)] = SmoothFn.from_sector_product(fa, fb, sc, P)
        return cache[(n, l)]

    worst = 0.0
    pairs = [
        (0, 0, 0, 0), (1, 0, 1, 0), (2, 1, 2, 1), (2, 1, 1, 2), (0, 0, 2, 2),
        (4, 4, 4, 4), (4, 3, 3, 4), (0, 0, 4, 4), (3, 2, 3, 2),
    ]
    for n, l, n2, l2 in pairs:
        for pt in _mirror_points():
            res = star_numeric(smooth(n, l), smooth(n2, l2), pt, 30, P)
            delta = 1.0 if (n, l) == (n2, l2) else 0.0
            target = delta * eval_wigner(WignerIndex.diagonal(n, l), pt, P)
            worst = max(worst, abs(res.value - target))
    ok = algebra_ok and worst <= 1e-6
    report(3, ok, f"projection exact over 625 pairs; series mirror worst {worst:.2e} <= 1e-6")


def test_criterion_4_normalization_orthogonality():
    start = time.perf_counter()
    h2 = P.h_squared
    idxs = [(n, l) for n in range(4) for l in range(4)]

    def grid_fields(envelope_s):
        rule = hermite_rule(20)
        shaped, wexp = [], []
        for i, ax in enumerate(("q1", "q2", "p1", "p2")):
            shape = [1, 1, 1, 1]
            shape[i] = rule.order
            shaped.append((rule.nodes * axis_scale(ax, P, envelope_s)).reshape(shape))
            wexp.append(rule.weights * np.exp(rule.nodes**2))
        scale = float(
            np.prod([axis_scale(ax, P, envelope_s) for ax in ("q1", "q2", "p1", "p2")])
        )
        fields = {
            (n, l): eval_wigner_xy(WignerIndex.diagonal(n, l), *shaped, P) for n, l in idxs
        }
        return fields, wexp, scale

    fields, wexp, scale = grid_fields(2.0)
    worst = 0.0
    for n, l in idxs:
        val = scale * np.einsum("ijkl,i,j,k,l->", fields[(n, l)], *wexp)
        worst = max(worst, abs(val - h2) / h2)

    fields, wexp, scale = grid_fields(4.0)
    for n, l in idxs:
        for n2, l2 in idxs:
            val = scale * np.einsum("ijkl,i,j,k,l->", fields[(n, l)] * fields[(n2, l2)], *wexp)
            target = h2 if (n, l) == (n2, l2) else 0.0
            worst = max(worst, abs(val - target) / h2)
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-10 and elapsed < 30.0
    report(4, ok, f"normalization/orthogonality rel err {worst:.2e} <= 1e-10 ({elapsed:.2f}s)")


def test_criterion_5_marginal_wavefunction_bridge():
    h2 = P.h_squared
    worst = 0.0
    points = RNG.normal(size=(20, 2))
    pairs = [(n, l) for n in range(4) for l in range(n + 1)]
    for q1, q2 in points:
        for n, l in pairs:
            psi = landau_psi(l, n - l, q1, q2, P)
            lhs = marginal_q1q2(n, l, q1, q2, P)
            worst = max(worst, abs(lhs - h2 * abs(psi) ** 2))
    bridge_ok = worst <= 1e-10

    worst_q = 0.0
    for n, l in ((0, 0), (2, 1), (3, 3), (1, 2)):
        for _ in range(3):
            u, v = RNG.normal(size=2)
            va = marginal_q1q2(n, l, u, v, P)
            vq = marginal_numeric(n, l, "q1q2", u, v, P, order=40, check=False)
            worst_q = max(worst_q, abs(va - vq))
            va = marginal_q1p2(n, l, u, v, P)
            vq = marginal_numeric(n, l, "q1p2", u, v, P, order=40, check=False)
            worst_q = max(worst_q, abs(va - vq))
    ok = bridge_ok and worst_q <= 1e-8
    report(
        5,
        ok,
        f"marginals: |psi|^2 bridge worst {worst:.2e} <= 1e-10; "
        f"analytic vs quadrature worst {worst_q:.2e} <= 1e-8",
    )


def test_criterion_6_polynomial_identities():
    from landau_wigner.specialfn import (
        ladder_diagonal_poly,
        laguerre_double_argument_residual,
        laguerre_poly,
        verify_rodrigues_shift_identity,
    )

    ok_shift = all(verify_rodrigues_shift_identity(n) for n in range(13))
    worst = 0.0
    for n in range(16):
        for x in (0.0, 0.5, 1.0, 2.5, 10.0):
            worst = max(worst, laguerre_double_argument_residual(n, x))
    ok_sum = worst <= 1e-10
    ok_poly = all(
        ladder_diagonal_poly(n) == laguerre_poly(n).compose_scale(2).scale((-1) ** n)
        for n in range(13)
    )
    ok = ok_shift and ok_sum and ok_poly
    report(
        6,
        ok,
        f"operator identity exact (n<=12); double-argument sum worst {worst:.2e} <= 1e-10; "
        "sandwich polynomial exact (n<=12)",
    )


def test_criterion_7_symmetries():
    pts = [PhasePoint(*RNG.normal(size=4)) for _ in range(100)]
    worst_d = 0.0
    for pt in pts:
        worst_d = max(worst_d, max(discrete_residuals(2, 1, pt, P).values()))
        worst_d = max(worst_d, max(discrete_residuals(0, 3, pt, P).values()))
    j0 = standard_symplectic_matrix()
    worst_c = 0.0
    for _ in range(100):
        sp = SymplecticParams(
            u=float(RNG.uniform(0.2, 3.0)) * (1 if RNG.random() < 0.5 else -1),
            v=float(RNG.uniform(0.2, 3.0)),
            xi=float(RNG.uniform(-math.pi, math.pi)),
            eta=float(RNG.uniform(-math.pi, math.pi)),
        )
        c = symplectic_C(sp, P)
        worst_c = max(worst_c, float(np.max(np.abs(c @ j0 @ c.T - j0))))
    worst_l = 0.0
    for sp in (
        SymplecticParams(1.0, 1.0, 0.7, 0.7),
        SymplecticParams(2.0, 0.5, 0.3, 1.1),
        SymplecticParams(-1.5, 2.5, -0.9, 2.2),
    ):
        for n, l in ((0, 0), (2, 1), (4, 4)):
            worst_l = max(worst_l, check_symplectic_invariance(n, l, sp, pts[:20], P))
    ok = worst_d <= 1e-12 and worst_c <= 1e-12 and worst_l <= 1e-12
    report(
        7,
        ok,
        f"discrete identities {worst_d:.2e}, symplectic condition {worst_c:.2e}, "
        f"ladder invariance {worst_l:.2e}, all <= 1e-12",
    )


def test_criterion_8_coherent_state_relations():
    worst = 0.0
    for _ in range(10):
        parts = RNG.uniform(-0.6, 0.6, size=8)
        gp = GenParams(
            complex(parts[0], parts[1]),
            complex(parts[2], parts[3]),
            complex(parts[4], parts[5]),
            complex(parts[6], parts[7]),
        )
        pt = PhasePoint(*RNG.normal(size=4))
        worst = max(worst, max(coherent_residuals(gp, pt, P).values()))
    ok = worst <= 1e-10
    report(8, ok, f"coherent-state and shift relations worst residual {worst:.2e} <= 1e-10")


def test_criterion_9_gauge_sector():
    g = landau_gauge_fn(P, +1)
    exact_all = True
    for n, l in ((0, 0), (1, 0), (1, 1)):
        exact, _ = transformed_eigen_residual(g, n, l, P)
        exact_all = exact_all and exact
    worst = 0.0
    for n, l in ((0, 0), (1, 0), (1, 1)):
        val = transformed_normalization(g, n, l, P, order=16)
        worst = max(worst, abs(val - P.h_squared) / P.h_squared)
    ok = exact_all and worst <= 1e-6
    report(
        9,
        ok,
        f"transformed eigen equations exact; normalization preserved to {worst:.2e} <= 1e-6",
    )


def test_criterion_10_oracle_triangulation():
    worst_g = 0.0
    for idx in (
        WignerIndex.diagonal(0, 0),
        WignerIndex.diagonal(2, 2),
        WignerIndex(1, 0, 0, 0),
        WignerIndex(2, 1, 3, 1),
        WignerIndex(0, 3, 2, 0),
    ):
        for _ in range(4):
            pt = PhasePoint(*RNG.normal(size=4))
            worst_g = max(worst_g, abs(derive_wigner_from_G(idx, pt, P) - eval_wigner(idx, pt, P)))
    worst_i = 0.0
    for pt in (PhasePoint(0.35, -0.55, 0.4, 0.15), PhasePoint(-0.8, 0.2, 0.6, -0.3)):
        val = wigner_from_wavefunction(pt, P, None, order=48)
        worst_i = max(worst_i, abs(val - eval_wigner(WignerIndex.diagonal(0, 0), pt, P)))
    ok = worst_g <= 1e-10 and worst_i <= 1e-6
    report(
        10,
        ok,
        f"generating-function route {worst_g:.2e} <= 1e-10; "
        f"direct-integral route {worst_i:.2e} <= 1e-6",
    )
