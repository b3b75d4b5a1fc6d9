"""Special functions used by the bound-state closed forms.

Jacobi polynomials (three-term recurrence), terminating Gauss
hypergeometric series, log-gamma, digamma, real-argument harmonic numbers
and Pochhammer symbols.  Everything here is a pure function.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "EULER_GAMMA",
    "JacobiParams",
    "jacobi_eval",
    "jacobi_derivative",
    "hyp2f1_terminating",
    "log_gamma",
    "digamma",
    "harmonic",
    "pochhammer",
]

EULER_GAMMA = 0.57721566490153286060651209008240243

# B_2k for k = 1..8
_BERNOULLI = (
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
)
_ASYMPTOTIC_CUTOFF = 15.0
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)
_DOMAIN_SLACK = 1e-12
_POCHHAMMER_PRODUCT_MAX = 32


@dataclass(frozen=True)
class JacobiParams:
    """Parameters of P_n^(alpha, beta)."""

    alpha: float
    beta: float
    n: int

    def __post_init__(self):
        if not (self.alpha > -1.0 and self.beta > -1.0):
            raise ValueError(
                f"Jacobi exponents must exceed -1, got alpha={self.alpha}, beta={self.beta}"
            )
        if int(self.n) != self.n or self.n < 0:
            raise ValueError(f"Jacobi degree must be a non-negative integer, got {self.n}")
        object.__setattr__(self, "n", int(self.n))


def _check_unit_interval(x):
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) > 1.0 + _DOMAIN_SLACK):
        raise ValueError("Jacobi argument outside [-1, 1]")
    return np.clip(x, -1.0, 1.0)


def _jacobi_recurrence(alpha, beta, n, x):
    p_prev = np.ones_like(x)
    if n == 0:
        return p_prev
    ab = alpha + beta
    p = (alpha + 1.0) + 0.5 * (ab + 2.0) * (x - 1.0)
    for k in range(2, n + 1):
        c = 2.0 * k + ab
        a1 = 2.0 * k * (k + ab) * (c - 2.0)
        a2 = (c - 1.0) * (alpha * alpha - beta * beta)
        a3 = (c - 2.0) * (c - 1.0) * c
        a4 = 2.0 * (k + alpha - 1.0) * (k + beta - 1.0) * c
        p_prev, p = p, ((a2 + a3 * x) * p - a4 * p_prev) / a1
    return p


def jacobi_eval(p: JacobiParams, x):
    """Evaluate P_n^(alpha, beta)(x) by the ascending three-term recurrence.

    ``x`` may be a scalar or an array; values up to 1e-12 outside [-1, 1]
    are clamped, anything further raises ``ValueError``.
    """
    xs = _check_unit_interval(x)
    out = _jacobi_recurrence(p.alpha, p.beta, p.n, xs)
    return float(out) if out.ndim == 0 else out


def jacobi_derivative(p: JacobiParams, x, order: int = 1):
    """Derivative of P_n^(alpha, beta) of the given order.

    Uses d^k/dx^k P_n^(a,b) = prod_{j=1..k} (n+a+b+j)/2 * P_{n-k}^(a+k, b+k).
    """
    if order < 0:
        raise ValueError("derivative order must be non-negative")
    xs = _check_unit_interval(x)
    if order > p.n:
        out = np.zeros_like(xs)
    else:
        scale = 1.0
        for j in range(1, order + 1):
            scale *= 0.5 * (p.n + p.alpha + p.beta + j)
        out = scale * _jacobi_recurrence(p.alpha + order, p.beta + order, p.n - order, xs)
    return float(out) if out.ndim == 0 else out


def _hyp2f1_sum(n: int, b: float, c: float, xs: np.ndarray) -> np.ndarray:
    term = np.ones_like(xs)
    total = np.ones_like(xs)
    for k in range(n):
        term = term * ((k - n) * (b + k) / ((c + k) * (k + 1.0))) * xs
        total = total + term
    return total


def hyp2f1_terminating(neg_n: int, b: float, c: float, x):
    """Finite sum 2F1(-n, b; c; x) = sum_k (-n)_k (b)_k / ((c)_k k!) x^k.

    For x > 1/2 the alternating power series cancels badly, so the
    polynomial is re-expanded about x = 1,
    2F1(-n, b; c; x) = (c-b)_n / (c)_n 2F1(-n, b; b-c-n+1; 1-x),
    whenever that expansion has no pole.
    """
    if int(neg_n) != neg_n or neg_n > 0:
        raise ValueError(f"first parameter must be a non-positive integer, got {neg_n}")
    n = -int(neg_n)
    for k in range(n):
        if c + k == 0.0:
            raise ZeroDivisionError(
                f"2F1 denominator (c)_k vanishes at k={k + 1} before the series terminates"
            )
    xs = np.asarray(x, dtype=float)
    total = _hyp2f1_sum(n, b, c, xs)
    c_far = b - c - n + 1.0
    far = xs > 0.5
    if n > 1 and np.any(far) and all(c_far + k != 0.0 for k in range(n)):
        prefactor = math.prod((c - b + k) / (c + k) for k in range(n))
        total = np.where(far, prefactor * _hyp2f1_sum(n, b, c_far, 1.0 - xs), total)
    return float(total) if total.ndim == 0 else total


def _is_nonpositive_integer(x: float) -> bool:
    return x <= 0.0 and x == math.floor(x)


def log_gamma(x: float) -> float:
    """log Gamma(x) for x > 0: Stirling series after an upward shift."""
    if not x > 0.0:
        raise ValueError(f"log_gamma requires x > 0, got {x}")
    shift = 0.0
    while x < _ASYMPTOTIC_CUTOFF:
        shift += math.log(x)
        x += 1.0
    inv = 1.0 / x
    inv2 = inv * inv
    series = 0.0
    power = inv
    for k, b2k in enumerate(_BERNOULLI, start=1):
        series += b2k / (2 * k * (2 * k - 1)) * power
        power *= inv2
    return (x - 0.5) * math.log(x) - x + _HALF_LOG_2PI + series - shift


def digamma(x: float) -> float:
    """psi(x) = d/dx log Gamma(x); reflection handles negative non-integers."""
    if _is_nonpositive_integer(x):
        raise ValueError(f"digamma has a pole at {x}")
    if x < 0.0:
        return digamma(1.0 - x) - math.pi / math.tan(math.pi * x)
    acc = 0.0
    while x < _ASYMPTOTIC_CUTOFF:
        acc -= 1.0 / x
        x += 1.0
    inv2 = 1.0 / (x * x)
    series = 0.0
    power = inv2
    for k, b2k in enumerate(_BERNOULLI, start=1):
        series += b2k / (2 * k) * power
        power *= inv2
    return acc + math.log(x) - 0.5 / x - series


def harmonic(x: float) -> float:
    """Harmonic number H_x = psi(x + 1) + gamma_E, valid for real x > -1."""
    if not x > -1.0:
        raise ValueError(f"harmonic requires x > -1, got {x}")
    return digamma(x + 1.0) + EULER_GAMMA


def pochhammer(x: float, n: int) -> float:
    """Rising factorial (x)_n = Gamma(x + n) / Gamma(x)."""
    if int(n) != n or n < 0:
        raise ValueError(f"Pochhammer index must be a non-negative integer, got {n}")
    n = int(n)
    if n <= _POCHHAMMER_PRODUCT_MAX or x <= 0.0:
        out = 1.0
        for k in range(n):
            out *= x + k
        return out
    return math.exp(log_gamma(x + n) - log_gamma(x))
