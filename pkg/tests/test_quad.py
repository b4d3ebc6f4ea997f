import math

import numpy as np
import pytest

from landau_wigner.phasespace import DEFAULT_PARAMS, Params
from landau_wigner.quad import (
    FieldGrid,
    GridSpec,
    QuadratureWarning,
    hermite_rule,
    integrate_gauss_poly,
    integrate_phase_space,
    integrate_plane,
    integrate_plane_checked,
    sample_grid,
)
from landau_wigner.wigner import WignerIndex, eval_wigner_xy

P = DEFAULT_PARAMS


def double_factorial_moment(k):
    # integral of x^{2k} e^{-x^2} dx = (2k-1)!! sqrt(pi) / 2^k
    return math.gamma(k + 0.5)


def test_rule_exactness_and_symmetry():
    for order in (1, 2, 7, 20, 41):
        rule = hermite_rule(order)
        assert np.all(rule.weights > 0)
        assert np.max(np.abs(rule.nodes + rule.nodes[::-1])) == 0.0
        for k in range(order):
            approx = float(np.sum(rule.weights * rule.nodes ** (2 * k)))
            exact = double_factorial_moment(k)
            assert abs(approx - exact) <= 1e-11 * max(1.0, exact)
    with pytest.raises(ValueError):
        hermite_rule(0)


def test_rule_cached():
    assert hermite_rule(24) is hermite_rule(24)


def test_ground_normalization():
    val = integrate_phase_space(
        lambda *ax: eval_wigner_xy(WignerIndex.diagonal(0, 0), *ax, P), P, order=20
    )
    assert abs(val - P.h_squared) <= 1e-12 * P.h_squared


def test_all_normalizations():
    for n in range(5):
        for l in range(5):
            val = integrate_phase_space(
                lambda *ax: eval_wigner_xy(WignerIndex.diagonal(n, l), *ax, P), P, order=24
            )
            assert abs(val - P.h_squared) <= 1e-10 * P.h_squared


def test_orthogonality():
    for pair in (((2, 1), (2, 1)), ((2, 1), (1, 2)), ((3, 0), (0, 3)), ((1, 1), (1, 1))):
        (n, l), (n2, l2) = pair
        val = integrate_phase_space(
            lambda *ax: eval_wigner_xy(WignerIndex.diagonal(n, l), *ax, P)
            * eval_wigner_xy(WignerIndex.diagonal(n2, l2), *ax, P),
            P,
            order=20,
            envelope_s=4,
        )
        target = P.h_squared if (n, l) == (n2, l2) else 0.0
        assert abs(val - target) <= 1e-10 * P.h_squared


def test_order_doubling_stability():
    f = lambda *ax: eval_wigner_xy(WignerIndex.diagonal(3, 3), *ax, P)
    v1 = integrate_phase_space(f, P, order=20)
    v2 = integrate_phase_space(f, P, order=40)
    assert abs(v1 - v2) <= 1e-10 * P.h_squared


def test_nondefault_params_normalization():
    params = Params(m=2.2, omega=0.7, hbar=1.9)
    val = integrate_phase_space(
        lambda *ax: eval_wigner_xy(WignerIndex.diagonal(1, 2), *ax, params), params, order=24
    )
    assert abs(val - params.h_squared) <= 1e-10 * params.h_squared


def test_integrate_plane_validation():
    with pytest.raises(ValueError):
        integrate_plane(lambda *a: 1.0, ("q1", "q1"), P)
    with pytest.raises(ValueError):
        integrate_plane(lambda *a: 1.0, ("q1", "zz"), P)


def test_plane_checked_warns_on_nonconvergence():
    # integrand grows against the weight, so order doubling moves the result
    rough = lambda q1, q2, p1, p2: np.exp(0.9 * (q1**2 + q2**2)) + 0 * p1 + 0 * p2
    with pytest.warns(QuadratureWarning):
        integrate_plane_checked(rough, ("q1", "q2"), P, order=12, tol=1e-12)


def test_integrate_gauss_poly_oracle():
    q = np.array([[2.0, 0.5, 0, 0], [0.5, 1.0, 0, 0], [0, 0, 1.5, 0.2], [0, 0, 0.2, 1.0]])
    val = integrate_gauss_poly(lambda y1, y2, y3, y4: np.ones_like(y1), q, order=8)
    oracle = math.pi**2 / math.sqrt(np.linalg.det(q))
    assert abs(val - oracle) < 1e-12 * oracle
    val = integrate_gauss_poly(lambda y1, y2, y3, y4: y1 * y1, q, order=10)
    oracle = math.pi**2 / math.sqrt(np.linalg.det(q)) * (np.linalg.inv(q)[0, 0] / 2)
    assert abs(val - oracle) < 1e-12


def test_sample_grid_constant_and_symmetry():
    spec = GridSpec(plane=("q1", "q2"), x_range=(-2, 2), y_range=(-2, 2), nx=9, ny=9)
    grid = sample_grid(lambda q1, q2, p1, p2: 3.5 + 0 * q1 + 0 * q2, spec, P)
    assert np.all(grid.values == 3.5)

    f = lambda q1, q2, p1, p2: eval_wigner_xy(WignerIndex.diagonal(0, 0), q1, q2, p1, p2, P)
    grid = sample_grid(f, spec, P)
    # parity symmetry of the sampled field on the symmetric grid
    assert np.max(np.abs(grid.values - grid.values[::-1, ::-1])) < 1e-14
    # peak value 4 at the central cell of an odd grid
    assert abs(grid.values[4, 4] - 4.0) < 1e-14
    assert grid.values.max() == grid.values[4, 4]
    assert grid.meta["plane"] == "q1q2"


def test_grid_spec_validation():
    with pytest.raises(ValueError):
        GridSpec(plane=("q1", "q2"), x_range=(0, 0), y_range=(-1, 1), nx=5, ny=5)
    with pytest.raises(ValueError):
        GridSpec(plane=("q1", "q2"), x_range=(-1, 1), y_range=(-1, 1), nx=1, ny=5)
    with pytest.raises(ValueError):
        GridSpec(plane=("q1", "q1"), x_range=(-1, 1), y_range=(-1, 1), nx=5, ny=5)
    with pytest.raises(ValueError):
        FieldGrid(
            xs=np.array([0.0]), ys=np.array([0.0]), values=np.array([[np.inf]]), meta={}
        )


def test_fixed_axes_in_plane_integral():
    # marginal of the ground state at the origin equals the closed value
    f = lambda *ax: eval_wigner_xy(WignerIndex.diagonal(0, 0), *ax, P)
    val = integrate_plane(f, ("p1", "p2"), P, order=40, fixed={"q1": 0.0, "q2": 0.0})
    assert abs(val - 4 * math.pi * (P.hbar / P.gamma) ** 2) < 1e-12
