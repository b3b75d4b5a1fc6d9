"""Bound states of the solitonic-mass Schrodinger system.

Mass m(x) = m0 sech^2(a x), potential V(x) = -V0 csch^2(a x), restricted
to x > 0 (the potential is singular at the origin).  Units: hbar = 1.

With y = tanh^2(a x) and rho = 1 - 2y the normalised states are

    psi_n = N_n y^(mu/2) (1 - y) P_n^(mu - 1/2, 1)(rho),

and the dimensionless spectrum is eps_n = 4 (n + 1)(n + 1 + s).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .specfun import JacobiParams, hyp2f1_terminating, jacobi_eval, log_gamma, pochhammer

__all__ = [
    "NU",
    "TAU",
    "SystemParams",
    "QuantumState",
    "derive_params",
    "params_from_v0",
    "energy",
    "hyp_params",
    "normalization_sq",
    "wavefunction_x",
    "wavefunction_rho",
]

NU = 1.5
TAU = -0.5
BOUND_STATE_LIMIT = 0.25


@dataclass(frozen=True)
class SystemParams:
    """Physical inputs (a, V0, m0) and the dimensionless parameters they fix."""

    a: float
    V0: float
    m0: float
    delta: float
    calV0: float
    mu: float
    s: float
    nu: float = NU
    tau: float = TAU

    @property
    def jacobi_alpha(self) -> float:
        return self.mu - 0.5

    @property
    def jacobi_beta(self) -> float:
        return self.nu - 0.5

    def jacobi(self, n: int) -> JacobiParams:
        return JacobiParams(self.jacobi_alpha, self.jacobi_beta, n)


@dataclass(frozen=True)
class QuantumState:
    n: int
    eps: float
    energy: float
    norm_sq: float


def _check_scales(a: float, m0: float) -> None:
    if not a > 0:
        raise ValueError(f"a must be positive, got {a}")
    if not m0 > 0:
        raise ValueError(f"m0 must be positive, got {m0}")


def _build(a: float, V0: float, m0: float, calV0: float) -> SystemParams:
    _check_scales(a, m0)
    if not V0 >= 0:
        raise ValueError(f"V0 must be non-negative, got {V0}")
    if calV0 > BOUND_STATE_LIMIT:
        raise ValueError(
            f"bound-state condition violated: delta*V0 = {calV0} exceeds 1/4"
        )
    delta = 2.0 * m0 / (a * a)
    s = math.sqrt(BOUND_STATE_LIMIT - calV0)
    return SystemParams(a=a, V0=V0, m0=m0, delta=delta, calV0=calV0, mu=0.5 + s, s=s)


def derive_params(a: float, V0: float, m0: float = 1.0) -> SystemParams:
    """Derive delta = 2 m0 / a^2, calV0 = delta V0, mu = 1/2 + sqrt(1/4 - calV0)."""
    _check_scales(a, m0)
    return _build(a, V0, m0, 2.0 * m0 / (a * a) * V0)


def params_from_v0(calV0: float, a: float, m0: float = 1.0) -> SystemParams:
    """Like :func:`derive_params` but keyed on the dimensionless depth calV0.

    calV0 is stored exactly; V0 = calV0 a^2 / (2 m0) is derived from it.
    """
    if not calV0 >= 0:
        raise ValueError(f"calV0 must be non-negative, got {calV0}")
    _check_scales(a, m0)
    return _build(a, calV0 * a * a / (2.0 * m0), m0, calV0)


def _check_level(n) -> int:
    if int(n) != n or n < 0:
        raise ValueError(f"level index must be a non-negative integer, got {n}")
    return int(n)


def energy(params: SystemParams, n: int) -> QuantumState:
    """Level n: eps_n = 4(n+1)(n+1+s), E_n = eps_n / delta."""
    n = _check_level(n)
    eps = 4.0 * (n + 1) * (n + 1 + params.s)
    return QuantumState(n=n, eps=eps, energy=eps / params.delta,
                        norm_sq=normalization_sq(params, n))


def hyp_params(params: SystemParams, eps: float) -> tuple[float, float, float]:
    """Hypergeometric parameters (a_h, b_h, c_h) of the reduced equation at energy eps."""
    radicand = eps + 0.25 - params.calV0
    if radicand < 0:
        raise ValueError(f"eps + 1/4 - calV0 = {radicand} is negative")
    root = 0.5 * math.sqrt(radicand)
    base = 0.5 * (params.mu + params.nu)
    return base - root, base + root, params.mu + 0.5


def normalization_sq(params: SystemParams, n: int, form: str = "simplified") -> float:
    """Squared normalisation constant on the half line x > 0.

    ``form="gamma"`` evaluates the Gamma-function/Pochhammer expression,
    ``form="simplified"`` the reduced rational one; they are equal.
    """
    n = _check_level(n)
    a, mu = params.a, params.mu
    if form == "simplified":
        return 2.0 * a * (mu + 1.5 + 2 * n) * (mu + 0.5 + n) / (n + 1)
    if form == "gamma":
        log_ratio = log_gamma(mu + 1.5 + n) + log_gamma(mu + 0.5 + n) - 2.0 * log_gamma(mu + 0.5)
        poch = pochhammer(mu + 0.5, n)
        return 2.0 * a * (mu + 1.5 + 2 * n) * math.exp(log_ratio) / ((1 + n) * poch * poch)
    raise ValueError(f"unknown normalisation form {form!r}")


def _tanh_sech2(ax):
    # sech^2 from exp(-2ax) keeps full relative precision in the tail
    e = np.exp(-2.0 * ax)
    return (1.0 - e) / (1.0 + e), 4.0 * e / (1.0 + e) ** 2


def wavefunction_x(params: SystemParams, n: int, x):
    """psi_n(x) for x > 0, built from the terminating 2F1 series.

    The 2F1 factor is rescaled by (mu + 1/2)_n / n! so this agrees
    identically with the Jacobi form :func:`wavefunction_rho`.
    """
    n = _check_level(n)
    xs = np.asarray(x, dtype=float)
    if np.any(xs <= 0):
        raise ValueError("wavefunction_x is defined for x > 0 only")
    mu = params.mu
    t, sech2 = _tanh_sech2(params.a * xs)
    scale = pochhammer(mu + 0.5, n) / math.factorial(n)
    series = hyp2f1_terminating(-n, mu + params.nu + n, mu + 0.5, t * t)
    out = math.sqrt(normalization_sq(params, n)) * t**mu * sech2 * scale * series
    return float(out) if out.ndim == 0 else out


def wavefunction_rho(params: SystemParams, n: int, rho):
    """psi_n as a function of rho = 1 - 2 tanh^2(a x), for -1 < rho < 1."""
    n = _check_level(n)
    rs = np.asarray(rho, dtype=float)
    if np.any(np.abs(rs) >= 1.0):
        raise ValueError("wavefunction_rho is defined on the open interval (-1, 1)")
    mu = params.mu
    poly = jacobi_eval(params.jacobi(n), rs)
    out = (math.sqrt(normalization_sq(params, n)) * ((1.0 - rs) / 2.0) ** (0.5 * mu)
           * ((1.0 + rs) / 2.0) * poly)
    return float(out) if np.ndim(out) == 0 else out
