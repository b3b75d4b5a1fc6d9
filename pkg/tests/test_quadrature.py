import math

import mpmath as mp
import numpy as np
import pytest

from pdmfisher.measures import x_mean_closed_form, x_moment
from pdmfisher.model import normalization_sq, params_from_v0, wavefunction_x
from pdmfisher.quadrature import (
    QuadratureError,
    gauss_jacobi_rule,
    integrate_adaptive,
    integrate_semi_infinite,
)
from pdmfisher.specfun import JacobiParams, jacobi_eval

MU = 0.5 + math.sqrt(7.0 / 8.0) / 2.0


def beta_moment(k, alpha, beta):
    """int_{-1}^{1} t^k (1-t)^alpha (1+t)^beta dt via a binomial sum of Beta functions."""
    with mp.workdps(80):
        a, b = mp.mpf(alpha), mp.mpf(beta)
        total = mp.mpf(0)
        for j in range(k + 1):
            total += mp.binomial(k, j) * 2**j * (-1) ** (k - j) * mp.beta(b + j + 1, a + 1)
        return float(2 ** (a + b + 1) * total)


def test_gauss_legendre_two_point():
    rule = gauss_jacobi_rule(0.0, 0.0, 2)
    assert np.allclose(rule.nodes, [-1 / math.sqrt(3), 1 / math.sqrt(3)], rtol=0, atol=1e-15)
    assert np.allclose(rule.weights, [1.0, 1.0], rtol=0, atol=1e-15)


def test_total_mass_inverse_sqrt_weight():
    rule = gauss_jacobi_rule(-0.5, 0.0, 40)
    assert rule.integrate(np.ones_like) == pytest.approx(2 * math.sqrt(2), rel=1e-12)


@pytest.mark.parametrize("alpha,beta,n", [(MU - 1.5, 1.0, 40), (0.3, -0.7, 25), (MU - 0.5, 1.0, 12)])
def test_exact_on_monomials(alpha, beta, n):
    rule = gauss_jacobi_rule(alpha, beta, n)
    for k in range(2 * n):
        exact = beta_moment(k, alpha, beta)
        assert rule.integrate(lambda t: t**k) == pytest.approx(exact, rel=1e-12), k


def test_rule_structure():
    rule = gauss_jacobi_rule(MU - 1.5, 1.0, 64)
    assert rule.interval == (-1.0, 1.0)
    assert rule.weight_exponents == (MU - 1.5, 1.0)
    assert rule.degree == 127
    assert np.all(np.diff(rule.nodes) > 0)
    assert -1 < rule.nodes[0] and rule.nodes[-1] < 1
    assert np.all(rule.weights > 0)
    with pytest.raises(ValueError):
        rule.nodes[0] = 0.0


@pytest.mark.parametrize("alpha,beta", [(-1.0, 0.0), (0.0, -1.2)])
def test_rejects_non_integrable_weight(alpha, beta):
    with pytest.raises(ValueError):
        gauss_jacobi_rule(alpha, beta, 8)


def test_adaptive_constant():
    value, err = integrate_adaptive(np.ones_like, 0.0, 1.0)
    assert value == pytest.approx(1.0, rel=1e-15)
    assert err >= 0


def test_adaptive_log_endpoint():
    value, _ = integrate_adaptive(lambda t: -np.log1p(-t), 0.0, 1.0, 1e-11)
    assert abs(value - 1.0) <= 1e-11


def test_adaptive_against_closed_form_mean():
    # int artanh(sqrt y) y^(mu-1/2) (1-y) dy times N_0^2 / (2a^2) is <x>_0
    params = params_from_v0(1 / 32, 1.0)
    value, _ = integrate_adaptive(
        lambda y: np.arctanh(np.sqrt(y)) * y ** (MU - 0.5) * (1 - y), 0.0, 1.0, 1e-12)
    got = normalization_sq(params, 0) / 2.0 * value
    assert got == pytest.approx(x_mean_closed_form(params, 0), rel=1e-9)


def test_adaptive_failure_is_loud():
    with pytest.raises(QuadratureError):
        with np.errstate(divide="ignore", over="ignore"):
            integrate_adaptive(lambda t: 1.0 / t, 0.0, 1.0, 1e-10)
    with pytest.raises(QuadratureError):
        integrate_adaptive(lambda t: np.sin(1.0 / t) / t, 0.0, 1.0, 1e-12, max_intervals=50)
    with pytest.raises(ValueError):
        integrate_adaptive(np.ones_like, 1.0, 1.0)
    # a singularity at t=1 cannot be resolved to 1e-12 in double precision; the
    # subdivision must report that rather than return a truncated value
    with pytest.raises(QuadratureError), np.errstate(divide="ignore"):
        integrate_adaptive(lambda t: 1.0 / np.sqrt(1.0 - t), 0.0, 1.0, 1e-12)


CORPUS = [
    (lambda t: np.exp(t), 0.0, 1.0, math.e - 1.0),
    (lambda t: np.sqrt(t), 0.0, 1.0, 2.0 / 3.0),
    (lambda t: -np.log(t), 0.0, 1.0, 1.0),
    (lambda t: 1.0 / np.sqrt(t), 0.0, 1.0, 2.0),
    (lambda t: np.cos(10 * t), 0.0, math.pi / 4, math.sin(10 * math.pi / 4) / 10),
]


@pytest.mark.parametrize("f,lo,hi,exact", CORPUS)
def test_adaptive_error_monotone_in_tolerance(f, lo, hi, exact):
    errors = []
    for tol in (1e-4, 1e-6, 1e-8, 1e-10, 1e-12):
        value, _ = integrate_adaptive(f, lo, hi, tol)
        assert abs(value - exact) <= max(tol * abs(exact), tol)
        errors.append(abs(value - exact))
    # rounding-level jitter (a few ulps) is not an increase
    for coarse, fine in zip(errors, errors[1:]):
        assert fine <= coarse + 8 * np.finfo(float).eps * abs(exact)


def test_semi_infinite_exponential():
    value, _ = integrate_semi_infinite(lambda x: np.exp(-x), 1e-12)
    assert value == pytest.approx(1.0, abs=1e-11)


def test_semi_infinite_normalization_and_orthogonality():
    params = params_from_v0(1 / 32, 1.0)
    psi0 = lambda x: wavefunction_x(params, 0, x)
    psi1 = lambda x: wavefunction_x(params, 1, x)
    norm, _ = integrate_semi_infinite(lambda x: psi0(x) ** 2, 1e-12)
    overlap, _ = integrate_semi_infinite(lambda x: psi0(x) * psi1(x), 1e-12, atol=1e-12)
    assert abs(norm - 1.0) < 1e-10
    assert abs(overlap) < 1e-8


@pytest.mark.parametrize("a", [0.5, 3.0])
def test_change_of_variables_consistency(a):
    # <x^2>_1 via x-space, via the y-space moment integral, and normalisation
    # via the rho-space Gauss-Jacobi rule
    params = params_from_v0(1 / 32, a)
    n = 1
    x_space, _ = integrate_semi_infinite(
        lambda x: x * x * wavefunction_x(params, n, x) ** 2, 1e-12, scale=a)
    y_space = x_moment(params, n, 2, 1e-12)
    assert x_space == pytest.approx(y_space, rel=1e-9)

    rule = gauss_jacobi_rule(MU - 0.5, 1.0, 20)
    poly = jacobi_eval(JacobiParams(MU - 0.5, 1.0, n), rule.nodes)
    rho_norm = normalization_sq(params, n) / (4 * a) * 2 ** (-(MU + 0.5)) * rule.integrate(poly**2)
    x_norm, _ = integrate_semi_infinite(lambda x: wavefunction_x(params, n, x) ** 2, 1e-12, scale=a)
    assert rho_norm == pytest.approx(1.0, rel=1e-12)
    assert x_norm == pytest.approx(rho_norm, rel=1e-9)
