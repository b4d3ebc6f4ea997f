from fractions import Fraction

import numpy as np
import pytest

from landau_wigner.gauge import (
    GaugeFn,
    conjugate_function,
    conjugate_momentum,
    gauge_classical_map,
    kernel_conjugation_residual,
    landau_gauge_fn,
    star_poly_gauss,
    transformed_eigen_residual,
    transformed_normalization,
    transformed_wigner,
    truncated_gauge_exponential,
    unitarity_remainder,
    verify_kernel_identity,
    wigner_from_wavefunction,
)
from landau_wigner.moyal import ladder_to_qp
from landau_wigner.phasespace import DEFAULT_PARAMS, Params, PhasePoint
from landau_wigner.qpoly import QPPoly, parse_qp_poly
from landau_wigner.wigner import WignerIndex, eval_ground, hamiltonian_fn

P = DEFAULT_PARAMS


def test_gauge_fn_validation():
    with pytest.raises(ValueError):
        GaugeFn(chi=parse_qp_poly("q1*p1"))
    with pytest.raises(ValueError):
        GaugeFn(chi=QPPoly({(1, 0, 0, 0): 1j}))
    with pytest.raises(ValueError):
        GaugeFn(chi=parse_qp_poly("q1^7"))
    GaugeFn(chi=parse_qp_poly("q1^6"))  # at the cap


def test_constant_gauge_is_identity():
    g = GaugeFn(chi=QPPoly.constant(2.5), coupling=0.7)
    assert conjugate_momentum(g, 1, P) == QPPoly.coordinate("p1")
    assert conjugate_momentum(g, 2, P) == QPPoly.coordinate("p2")
    with pytest.raises(ValueError):
        conjugate_momentum(g, 3, P)


def test_linear_gauge_shifts_by_constant():
    g = GaugeFn(chi=parse_qp_poly("0.5*q1"), coupling=1.0)
    assert conjugate_momentum(g, 1, P) == QPPoly.coordinate("p1") - QPPoly.constant(
        Fraction(1, 2) * Fraction(P.hbar)
    )
    assert conjugate_momentum(g, 2, P) == QPPoly.coordinate("p2")


def test_momentum_conjugation_general_chi():
    g = GaugeFn(chi=parse_qp_poly("q1^2*q2 - q2^3/3"), coupling=0.5)
    expected = QPPoly.coordinate("p1") - g.chi.deriv("q1").scale(
        Fraction(P.hbar) * Fraction(g.coupling)
    )
    assert conjugate_momentum(g, 1, P) == expected


def test_position_functions_unchanged():
    g = landau_gauge_fn(P, +1)
    f = parse_qp_poly("q1^2 + 3*q2")
    assert conjugate_function(g, f, P) == f


def test_symmetric_to_landau_gauge():
    mw = P.m * P.omega
    h_qp = ladder_to_qp(hamiltonian_fn(P), P)
    for sign in (+1, -1):
        g = landau_gauge_fn(P, sign)
        h_prime = conjugate_function(g, h_qp, P)
        if sign > 0:
            expected = parse_qp_poly(f"0.5*p1^2 + 0.5*p2^2 - {mw}*q1*p2 + {mw * mw / 2}*q1^2")
        else:
            expected = parse_qp_poly(f"0.5*p1^2 + 0.5*p2^2 + {mw}*q2*p1 + {mw * mw / 2}*q2^2")
        assert h_prime == expected


def test_transformed_eigen_equation_exact():
    g = landau_gauge_fn(P, +1)
    for n, l in ((0, 0), (1, 0), (1, 1)):
        exact, worst = transformed_eigen_residual(g, n, l, P)
        assert exact and worst == 0.0


def test_transformed_state_reality_and_idempotence_scaffolding():
    g = landau_gauge_fn(P, +1)
    w = transformed_wigner(g, WignerIndex.diagonal(1, 1), P)
    assert w.poly.is_real()
    qf = np.array([[float(c) for c in row] for row in w.qform])
    assert np.allclose(qf, qf.T)
    assert np.all(np.linalg.eigvalsh(qf) > 0)
    # conjugating a real polynomial returns a real polynomial
    h_prime = conjugate_function(g, ladder_to_qp(hamiltonian_fn(P), P), P)
    assert h_prime.is_real()


def test_transformed_normalization():
    g = landau_gauge_fn(P, +1)
    for n, l in ((0, 0), (1, 1), (2, 2)):
        val = transformed_normalization(g, n, l, P, order=16)
        assert abs(val - P.h_squared) <= 1e-6 * P.h_squared


def test_cubic_chi_rejected_for_states():
    g = GaugeFn(chi=parse_qp_poly("q1^3"), coupling=1.0)
    with pytest.raises(ValueError):
        gauge_classical_map(g, P)
    with pytest.raises(ValueError):
        transformed_wigner(g, WignerIndex.diagonal(0, 0), P)
    # observables still conjugate exactly
    p1p = conjugate_momentum(g, 1, P)
    assert p1p == QPPoly.coordinate("p1") - g.chi.deriv("q1").scale(Fraction(P.hbar))


def test_star_poly_gauss_sides_agree_for_commuting_case():
    g = landau_gauge_fn(P, +1)
    w = transformed_wigner(g, WignerIndex.diagonal(0, 0), P)
    h_prime = conjugate_function(g, ladder_to_qp(hamiltonian_fn(P), P), P)
    left = star_poly_gauss(h_prime, w, P, "left")
    right = star_poly_gauss(h_prime, w, P, "right")
    assert left.poly == right.poly  # both equal E * W'


def test_kernel_identity():
    assert verify_kernel_identity(QPPoly.constant(1), QPPoly.constant(1), (0.3, -0.2), PhasePoint(0.1, 0.2, 0.3, 0.4), P) == 0.0
    rng = np.random.default_rng(17)
    for _ in range(5):
        y = tuple(rng.normal(size=2))
        pt = PhasePoint(*rng.normal(size=4))
        res = verify_kernel_identity(QPPoly.coordinate("q1"), QPPoly.coordinate("q2"), y, pt, P)
        assert res <= 1e-13
    f1 = parse_qp_poly("q1^2*q2 - 0.25*q2^3 + 1")
    f2 = parse_qp_poly("q1*q2^2 + 2*q1")
    res = verify_kernel_identity(f1, f2, (0.3, -0.8), PhasePoint(0.2, -0.4, 1.1, 0.6), P)
    assert res <= 1e-13


def test_truncated_exponential_conjugation():
    g = GaugeFn(chi=parse_qp_poly("0.3*q1*q2"), coupling=1.0)
    rng = np.random.default_rng(2)
    for y in ((0.375, -0.25), (0.5, 0.125)):
        pt = PhasePoint(*rng.normal(scale=0.8, size=4))
        assert kernel_conjugation_residual(g, y, pt, P, order=8) <= 1e-6


def test_unitarity_of_truncations():
    g = GaugeFn(chi=parse_qp_poly("q1*q2"), coupling=0.5)
    for order in (2, 4, 6):
        rem = unitarity_remainder(g, order)
        # every surviving term sits above the truncation order in chi
        min_degree = min(sum(k) for k in rem.terms)
        assert min_degree >= 2 * (order + 1)
    un = truncated_gauge_exponential(g, 3)
    assert un.terms[(0, 0, 0, 0)] is not None


def test_wavefunction_route_matches_closed_form():
    for pt in (PhasePoint(0.35, -0.55, 0.4, 0.15), PhasePoint(-0.8, 0.2, 0.6, -0.3)):
        val = wigner_from_wavefunction(pt, P, None, order=48)
        assert abs(val - eval_ground(pt, P)) <= 1e-6
        assert abs(val.imag) < 1e-9


def test_gauge_transformed_wigner_equals_wigner_of_gauged_wavefunction():
    g = landau_gauge_fn(P, +1)
    wq = transformed_wigner(g, WignerIndex.diagonal(0, 0), P)
    for pt in (PhasePoint(0.35, -0.55, 0.4, 0.15), PhasePoint(0.1, 0.9, -0.2, 0.5)):
        star_route = wq(pt.q1, pt.q2, pt.p1, pt.p2)
        wavefn_route = wigner_from_wavefunction(pt, P, g, order=48)
        assert abs(star_route - wavefn_route) <= 1e-6


def test_nondefault_params_gauge():
    # exact coefficientwise zero needs an exactly representable magnetic length
    params = Params(m=1.0, omega=1.0, hbar=0.5)  # gamma = 1, kappa = 1/2
    g = landau_gauge_fn(params, +1)
    exact, worst = transformed_eigen_residual(g, 1, 0, params)
    assert exact and worst == 0.0
    val = transformed_normalization(g, 0, 0, params, order=16)
    assert abs(val - params.h_squared) <= 1e-6 * params.h_squared
    # irrational magnetic length: the same check holds to rounding
    params = Params(m=2.0, omega=1.0, hbar=0.5)
    _, worst = transformed_eigen_residual(landau_gauge_fn(params, +1), 1, 0, params)
    assert worst <= 1e-12
