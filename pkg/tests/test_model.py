import math

import numpy as np
import pytest

from pdmfisher.model import (
    NU,
    derive_params,
    energy,
    hyp_params,
    normalization_sq,
    params_from_v0,
    wavefunction_rho,
    wavefunction_x,
)
from pdmfisher.quadrature import integrate_semi_infinite

MU = 0.967707


@pytest.mark.parametrize("a,V0,delta", [(1.0, 1 / 64, 2.0), (2.0, 1 / 16, 0.5)])
def test_derive_params_reference_depth(a, V0, delta):
    p = derive_params(a, V0, 1.0)
    assert p.delta == pytest.approx(delta, rel=1e-15)
    assert p.calV0 == pytest.approx(1 / 32, rel=1e-15)
    assert p.mu == pytest.approx(MU, abs=5e-7)
    assert p.nu == NU == 1.5
    assert p.mu == pytest.approx(0.5 + p.s, rel=1e-15)


def test_derive_params_zero_depth():
    p = derive_params(1.0, 0.0, 1.0)
    assert (p.calV0, p.mu, p.s) == (0.0, 1.0, 0.5)


@pytest.mark.parametrize("kwargs", [
    dict(a=0.0, V0=0.01), dict(a=-1.0, V0=0.01), dict(a=1.0, V0=-0.1), dict(a=1.0, V0=0.01, m0=0.0)])
def test_derive_params_rejects_bad_input(kwargs):
    with pytest.raises(ValueError):
        derive_params(**kwargs)


def test_bound_state_condition_message():
    with pytest.raises(ValueError, match="bound-state"):
        derive_params(1.0, 0.2, 1.0)
    with pytest.raises(ValueError, match="bound-state"):
        params_from_v0(0.26, 1.0)
    # the boundary itself is admitted
    assert params_from_v0(0.25, 1.0).mu == 0.5


def test_energy_examples():
    assert energy(params_from_v0(1 / 32, 1.0), 0).eps == pytest.approx(5.870829, abs=5e-7)
    assert energy(params_from_v0(0.0, 1.0), 0).eps == 6.0
    assert energy(params_from_v0(0.25, 1.0), 1).eps == 16.0


def test_energy_dimensionful_and_ordering():
    rng = np.random.default_rng(1)
    for calV0 in np.append(rng.uniform(0, 0.25, 10), [0.0, 0.25]):
        p = params_from_v0(calV0, 1.7, 0.6)
        eps = [energy(p, n).eps for n in range(10)]
        assert np.all(np.diff(eps) > 0)
        state = energy(p, 3)
        assert state.energy == pytest.approx(state.eps / p.delta, rel=1e-15)
        assert state.norm_sq > 0


def test_quantum_condition():
    rng = np.random.default_rng(7)
    for calV0 in rng.uniform(0, 0.25, 20):
        p = params_from_v0(calV0, 1.0)
        for n in range(9):
            a_h, b_h, c_h = hyp_params(p, energy(p, n).eps)
            assert abs(a_h + n) <= 1e-10
            assert b_h == pytest.approx(p.mu + p.nu + n, abs=1e-10)
            assert c_h == p.mu + 0.5


def test_hyp_params_negative_radicand():
    with pytest.raises(ValueError):
        hyp_params(params_from_v0(0.0, 1.0), -1.0)


def test_normalization_examples():
    p1 = params_from_v0(1 / 32, 1.0)
    # 2(2.467707)(1.467707) and 2(4.467707)(2.467707)/2 at the rounded mu
    assert normalization_sq(p1, 0) == pytest.approx(7.243742, rel=1e-6)
    assert normalization_sq(p1, 1) == pytest.approx(11.024992, rel=1e-6)
    p2 = params_from_v0(1 / 32, 2.0)
    for n in range(5):
        assert normalization_sq(p2, n) == 2 * normalization_sq(p1, n)


def test_normalization_forms_agree():
    rng = np.random.default_rng(3)
    for calV0 in np.append(rng.uniform(0, 0.25, 15), [0.0, 0.25]):
        p = params_from_v0(calV0, rng.uniform(0.3, 5))
        for n in range(12):
            assert normalization_sq(p, n, "gamma") == pytest.approx(
                normalization_sq(p, n), rel=1e-12)
    with pytest.raises(ValueError):
        normalization_sq(p, 0, "other")


@pytest.mark.parametrize("calV0", [0.0, 1 / 32, 0.2])
def test_orthonormality(calV0):
    p = params_from_v0(calV0, 1.3)
    for m in range(4):
        for n in range(m, 4):
            value, _ = integrate_semi_infinite(
                lambda x: wavefunction_x(p, m, x) * wavefunction_x(p, n, x), 1e-11,
                scale=p.a, atol=1e-12)
            assert abs(value - (m == n)) < 1e-8, (m, n)


@pytest.mark.parametrize("n", range(6))
def test_node_count(n):
    p = params_from_v0(1 / 32, 1.0)
    x = np.linspace(1e-4, 12.0, 20001)
    psi = wavefunction_x(p, n, x)
    assert np.count_nonzero(np.diff(np.sign(psi)) != 0) == n


def test_representations_agree():
    rng = np.random.default_rng(11)
    for calV0 in (0.0, 1 / 32, 0.24):
        p = params_from_v0(calV0, 1.5)
        rho = rng.uniform(-0.999, 0.999, 100)
        x = np.arctanh(np.sqrt((1 - rho) / 2)) / p.a
        for n in range(6):
            via_rho = wavefunction_rho(p, n, rho)
            via_x = wavefunction_x(p, n, x)
            scale = np.max(np.abs(via_rho))
            # next to a node pointwise relative error is ill-conditioned (the
            # rho -> x -> tanh^2 round trip alone moves the value), so the
            # bound there is relative to the function's scale
            assert np.max(np.abs(via_x - via_rho)) <= 1e-12 * scale, n
            far = np.abs(via_rho) > 1e-2 * scale
            assert np.allclose(via_x[far], via_rho[far], rtol=1e-12, atol=0), n


def test_rho_ground_state_and_crosscheck():
    p = params_from_v0(1 / 32, 1.0)
    rho = 0.3
    expected = math.sqrt(normalization_sq(p, 0)) * ((1 - rho) / 2) ** (p.mu / 2) * ((1 + rho) / 2)
    assert wavefunction_rho(p, 0, rho) == pytest.approx(expected, rel=1e-15)
    x_star = math.atanh(math.sqrt(0.5)) / p.a
    assert wavefunction_rho(p, 2, 0.0) == pytest.approx(wavefunction_x(p, 2, x_star), rel=1e-12)
    assert abs(wavefunction_rho(p, 3, 1 - 1e-14)) < 1e-5


def test_tail_decay_and_origin_behaviour():
    p = params_from_v0(1 / 32, 1.0)
    x = np.array([5.0, 10.0, 20.0, 40.0])
    tail = np.abs(wavefunction_x(p, 0, x))
    assert np.all(np.diff(tail) < 0)
    assert tail[-1] < 1e-30
    # psi ~ C x^mu as x -> 0+
    small = np.array([1e-6, 1e-5])
    ratio = wavefunction_x(p, 1, small[1]) / wavefunction_x(p, 1, small[0])
    assert math.log(ratio) / math.log(10.0) == pytest.approx(p.mu, rel=1e-8)


def test_wavefunction_domain_errors():
    p = params_from_v0(1 / 32, 1.0)
    with pytest.raises(ValueError):
        wavefunction_x(p, 0, 0.0)
    with pytest.raises(ValueError):
        wavefunction_x(p, 0, np.array([1.0, -1.0]))
    for bad in (1.0, -1.0):
        with pytest.raises(ValueError):
            wavefunction_rho(p, 1, bad)
    with pytest.raises(ValueError):
        wavefunction_x(p, -1, 1.0)
    with pytest.raises(ValueError):
        energy(p, 1.5)
