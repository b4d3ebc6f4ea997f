import math

import numpy as np
import pytest

from landau_wigner.marginals import (
    analytic_marginal,
    complement_axes,
    dimensionless_vars,
    landau_energy,
    landau_psi,
    marginal_generating_q,
    marginal_grid,
    marginal_numeric,
    marginal_q1p2,
    marginal_q1q2,
    marginal_q1q2_from_generating,
    marginal_q2p1,
    plane_axes,
)
from landau_wigner.phasespace import DEFAULT_PARAMS, PhasePoint
from landau_wigner.quad import hermite_rule, integrate_plane
from landau_wigner.wigner import GenParams, eval_generating

P = DEFAULT_PARAMS
RNG = np.random.default_rng(314)


def test_plane_helpers():
    assert plane_axes("q1p2") == ("q1", "p2")
    assert complement_axes("q1p2") == ("q2", "p1")
    assert complement_axes("q1q2") == ("p1", "p2")
    with pytest.raises(ValueError):
        plane_axes("q1q1")
    assert analytic_marginal("q1p1") is None
    assert analytic_marginal("q1q2") is marginal_q1q2


def test_ground_state_forms():
    for u, v in RNG.normal(size=(5, 2)):
        rho2 = (u * u + v * v) / P.gamma**2
        expect = 4 * math.pi * (P.hbar / P.gamma) ** 2 * math.exp(-rho2)
        assert abs(marginal_q1q2(0, 0, u, v, P) - expect) < 1e-14
        dv = dimensionless_vars(PhasePoint(u, 0, 0, v), P)
        expect = 4 * math.pi * P.hbar * math.exp(-0.5 * (dv.tau_plus**2 + dv.tau_minus**2))
        assert abs(marginal_q1p2(0, 0, u, v, P) - expect) < 1e-14


def test_analytic_matches_quadrature():
    for n, l in ((0, 0), (1, 0), (2, 1), (3, 3), (1, 3), (0, 2)):
        for _ in range(3):
            u, v = RNG.normal(scale=1.2, size=2)
            for plane in ("q1q2", "p1p2", "q1p2", "q2p1"):
                fn = analytic_marginal(plane)
                va = fn(n, l, u, v, P)
                vq = marginal_numeric(n, l, plane, u, v, P, order=40, check=False)
                assert abs(va - vq) <= 1e-8 * max(1.0, abs(va))


def test_index_swap_identity():
    for _ in range(5):
        u, v = RNG.normal(size=2)
        for n, l in ((0, 0), (2, 1), (1, 3)):
            assert marginal_q2p1(n, l, u, v, P) == marginal_q1p2(l, n, u, v, P)


def test_swapped_position_marginal_for_n_below_l():
    # the n < l branch is validated against the quadrature oracle
    for _ in range(4):
        u, v = RNG.normal(size=2)
        va = marginal_q1q2(1, 3, u, v, P)
        vq = marginal_numeric(1, 3, "q1q2", u, v, P, order=40, check=False)
        assert abs(va - vq) <= 1e-8 * max(1.0, abs(va))


def test_wavefunction_bridge():
    h2 = P.h_squared
    count = 0
    for n in range(4):
        for l in range(n + 1):  # n >= l
            for _ in range(2):
                q1, q2 = RNG.normal(size=2)
                psi = landau_psi(l, n - l, q1, q2, P)
                lhs = marginal_q1q2(n, l, q1, q2, P)
                assert abs(lhs - h2 * abs(psi) ** 2) <= 1e-10 * max(1.0, abs(lhs))
                count += 1
    assert count >= 20


def test_wavefunction_energy():
    assert landau_energy(0, 0, P) == P.hbar * P.omega * 0.5
    # negative angular momentum costs one Landau quantum per unit
    assert landau_energy(1, -2, P) == P.hbar * P.omega * (1 + 0.5 + 2)
    with pytest.raises(ValueError):
        landau_psi(-1, 0, 0.0, 0.0, P)


def test_positivity():
    for _ in range(100):
        u, v = RNG.normal(scale=1.5, size=2)
        n, l = RNG.integers(0, 4, size=2)
        assert marginal_q1p2(int(n), int(l), u, v, P) >= 0
        assert marginal_q1q2(int(n), int(l), u, v, P) >= 0
    for _ in range(20):
        u, v = RNG.normal(size=2)
        assert marginal_numeric(1, 2, "q1p1", u, v, P, order=40, check=False) > -1e-10


def test_axial_symmetry_rotated_points():
    # each of the four axial planes depends only on its radial combination
    scale_map = {
        "q1q2": (P.gamma, P.gamma),
        "p1p2": (2 * P.hbar / P.gamma, 2 * P.hbar / P.gamma),
        "q1p1": (2 * P.gamma, P.m * P.omega * P.gamma),
        "q2p2": (2 * P.gamma, P.m * P.omega * P.gamma),
    }
    for plane, (su, sv) in scale_map.items():
        for n, l in ((0, 0), (2, 1)):
            r, phi0 = 1.3, 0.4
            vals = []
            for phi in (phi0, phi0 + 1.1, phi0 + 2.9):
                u, v = su * r * math.cos(phi), sv * r * math.sin(phi)
                if analytic_marginal(plane) is not None:
                    vals.append(analytic_marginal(plane)(n, l, u, v, P))
                else:
                    vals.append(marginal_numeric(n, l, plane, u, v, P, order=40, check=False))
            assert max(vals) - min(vals) <= 1e-10 * max(1.0, max(map(abs, vals)))


def test_normalization_all_planes():
    h2 = P.h_squared
    # closed-form planes: integrate the density with the matched rule
    for plane in ("q1q2", "p1p2", "q1p2", "q2p1"):
        fn = analytic_marginal(plane)
        ax = plane_axes(plane)
        for n, l in ((0, 0), (2, 1), (3, 3)):

            def field(q1, q2, p1, p2, _fn=fn, _ax=ax):
                coords = {"q1": q1, "q2": q2, "p1": p1, "p2": p2}
                return _fn(n, l, coords[_ax[0]], coords[_ax[1]], P)

            val = integrate_plane(field, ax, P, order=40)
            assert abs(val - h2) <= 1e-6 * h2
    # quadrature-only planes via the grid sampler on quadrature nodes
    rule = hermite_rule(32)
    for plane in ("q1p1", "q2p2"):
        ax = plane_axes(plane)
        from landau_wigner.quad import axis_scale

        su, sv = axis_scale(ax[0], P), axis_scale(ax[1], P)
        for n, l in ((0, 0), (1, 2)):
            vals = marginal_grid(n, l, plane, rule.nodes * su, rule.nodes * sv, P, order=40)
            wexp = rule.weights * np.exp(rule.nodes**2)
            total = su * sv * np.einsum("ij,i,j->", vals, wexp, wexp)
            assert abs(total - h2) <= 1e-6 * h2


def test_marginal_numeric_guards():
    with pytest.raises(ValueError):
        marginal_numeric(3, 0, "q1q2", 0.0, 0.0, P, order=24)  # below the safe floor
    with pytest.raises(ValueError):
        marginal_numeric(-1, 0, "q1q2", 0.0, 0.0, P)
    with pytest.raises(ValueError):
        marginal_numeric(0, 0, "qq", 0.0, 0.0, P)
    assert marginal_numeric(0, 0, "q1q2", 0.3, -0.2, P, normalized=True) == pytest.approx(
        marginal_q1q2(0, 0, 0.3, -0.2, P) / P.h_squared, rel=1e-10
    )


def test_marginal_grid_methods():
    xs = np.linspace(-2, 2, 7)
    ys = np.linspace(-2, 2, 5)
    analytic = marginal_grid(2, 1, "q1q2", xs, ys, P, method="analytic")
    quad = marginal_grid(2, 1, "q1q2", xs, ys, P, method="quadrature")
    assert np.max(np.abs(analytic - quad)) < 1e-8
    with pytest.raises(ValueError):
        marginal_grid(0, 0, "q1p1", xs, ys, P, method="analytic")
    with pytest.raises(ValueError):
        marginal_grid(0, 0, "q1q2", xs, ys, P, method="nope")


def test_generating_function_of_marginals():
    # zero parameters reduce to the ground-state density (up to the factor 4)
    for _ in range(4):
        q1, q2 = RNG.normal(size=2)
        m0 = marginal_generating_q(GenParams(), q1, q2, P)
        assert abs(4 * m0 - marginal_q1q2(0, 0, q1, q2, P)) < 1e-13
    # parameter extraction reproduces the closed form
    for n in range(4):
        for l in range(4):
            q1, q2 = RNG.normal(size=2)
            der = marginal_q1q2_from_generating(n, l, q1, q2, P)
            assert abs(der - marginal_q1q2(n, l, q1, q2, P)) < 1e-10 * max(
                1.0, abs(der)
            )
    # momentum-plane quadrature of the generating function matches
    rng = np.random.default_rng(8)
    for _ in range(3):
        parts = rng.uniform(-0.5, 0.5, size=8)
        gp = GenParams(
            complex(parts[0], parts[1]),
            complex(parts[2], parts[3]),
            complex(parts[4], parts[5]),
            complex(parts[6], parts[7]),
        )
        q1, q2 = rng.normal(size=2)

        def g_field(a, b, c, d):
            return eval_generating(gp, PhasePoint(a + 0 * c + 0 * d, b + 0 * c + 0 * d, c + 0 * a, d + 0 * a), P)

        val = integrate_plane(g_field, ("p1", "p2"), P, order=40, fixed={"q1": q1, "q2": q2})
        ref = marginal_generating_q(gp, q1, q2, P)
        assert abs(val - ref) <= 1e-7 * max(1.0, abs(ref))
