"""Fisher information, position/momentum moments and uncertainty products.

Quadrature routes work for any level n; closed forms exist for the low
levels only and are cross-checked against the quadrature routes in the
test-suite.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .model import SystemParams, normalization_sq
from .quadrature import DEFAULT_NODES, gauss_jacobi_rule, integrate_adaptive
from .specfun import (
    EULER_GAMMA,
    JacobiParams,
    digamma,
    harmonic,
    jacobi_derivative,
    jacobi_eval,
    pochhammer,
)

__all__ = [
    "MeasureReport",
    "TABLE_COLUMNS",
    "fisher_quadrature",
    "fisher_closed_form",
    "x_moment",
    "x_mean_closed_form",
    "p2_mean",
    "report",
]

SPECIALIZED_V0 = 1.0 / 32.0
_SQRT14 = math.sqrt(14.0)
# y-split between the direct and the y = 1 - exp(-u) pieces of the moment integrals
_MOMENT_SPLIT_U = 4.0
_MOMENT_TAIL_U = 40.0


def _level(n) -> int:
    if int(n) != n or n < 0:
        raise ValueError(f"level index must be a non-negative integer, got {n}")
    return int(n)


def _fisher_rule(params: SystemParams, n: int, nodes: int | None = None):
    # weight (1-t)^(mu-3/2) (1+t); the squared bracket has degree 2n+2
    if nodes is None:
        nodes = max(DEFAULT_NODES, n + 2)
    if nodes < n + 2:
        raise ValueError(f"{nodes} nodes cannot integrate level {n} exactly")
    return gauss_jacobi_rule(params.mu - 1.5, 1.0, nodes)


def _fisher_bracket(params: SystemParams, n: int, t):
    """(3+2n+2mu)(t^2-1) P_{n-1}^(mu+1/2, 2) + 2[2(t-1) + mu(t+1)] P_n^(mu-1/2, 1)."""
    mu = params.mu
    p_n = jacobi_eval(params.jacobi(n), t)
    out = 2.0 * (2.0 * (t - 1.0) + mu * (t + 1.0)) * p_n
    if n > 0:
        p_low = jacobi_eval(JacobiParams(mu + 0.5, 2.0, n - 1), t)
        out = out + (3.0 + 2 * n + 2.0 * mu) * (t * t - 1.0) * p_low
    return out


def fisher_quadrature(params: SystemParams, n: int, nodes: int | None = None) -> float:
    """Fisher information I_F = 4 int_0^inf psi'(x)^2 dx of level n.

    Written over rho in [-1, 1]; the (1-rho)^(mu-3/2) endpoint factor is
    absorbed into a Gauss-Jacobi weight, leaving a polynomial integrand that
    the rule integrates exactly.  Diverges (returns inf) at mu = 1/2.
    """
    n = _level(n)
    if params.mu - 1.5 <= -1.0:
        return math.inf
    rule = _fisher_rule(params, n, nodes)
    bracket = _fisher_bracket(params, n, rule.nodes)
    integral = rule.integrate(bracket * bracket)
    return normalization_sq(params, n) * params.a / 16.0 * 2.0 ** (0.5 - params.mu) * integral


def _fisher_printed(params: SystemParams, n: int) -> float:
    mu, a = params.mu, params.a
    norm = normalization_sq(params, n)
    if n == 0:
        return (32.0 * a * (2 * mu * mu + 4 * mu - 1)
                / ((2 * mu - 1) * (2 * mu + 1) * (2 * mu + 3) * (2 * mu + 5)) * norm)
    if n == 1:
        poly = -33.0 + 68.0 * mu + 52.0 * mu**2 + 8.0 * mu**3
        denom = (2 * mu - 1) * (2 * mu + 3) * (2 * mu + 5) * (2 * mu + 7) * (2 * mu + 9)
        return 128.0 * a * norm / pochhammer(mu + 0.5, 1) * poly / denom
    # n = 2, 3: constants specialised to calV0 = 1/32, where mu = (4 + sqrt 14)/8
    m = (4.0 + _SQRT14) / 8.0
    if n == 2:
        return (-2304.0 * a * norm * (29629036.0 * _SQRT14 - 2060523213.0)
                / (398279448385.0 * (m + 0.5) * (m + 1.5)))
    return (-49152.0 * a * norm * (8867016.0 * _SQRT14 - 809394467.0)
            / (831817071085.0 * (m + 0.5) * (m + 1.5) * (m + 2.5)))


def fisher_closed_form(params: SystemParams, n: int, as_printed: bool = False) -> float:
    """Closed-form Fisher information for n = 0..3.

    n = 0, 1 hold for any mu != 1/2; n = 2, 3 only at calV0 = 1/32.

    The reference n >= 1 expressions are written against a normalisation
    that differs from ``normalization_sq`` by P_n^(mu-1/2, 1)(1) =
    (mu + 1/2)_n / n!; by default that factor is restored so the result is
    the Fisher information of the unit-normalised state.  Pass
    ``as_printed=True`` for those expressions unscaled.
    """
    n = _level(n)
    if n > 3:
        raise ValueError("closed-form Fisher information is available for n <= 3 only")
    if params.s == 0.0:
        raise ValueError("closed-form Fisher information unavailable at mu = 1/2 (calV0 = 1/4)")
    if n >= 2 and not math.isclose(params.calV0, SPECIALIZED_V0, rel_tol=1e-12):
        raise ValueError(f"the n={n} closed form is specialised to calV0 = 1/32")
    value = _fisher_printed(params, n)
    if not value > 0:
        raise ArithmeticError(f"closed-form Fisher information came out non-positive: {value}")
    if as_printed:
        return value
    return value * pochhammer(params.mu + 0.5, n) / math.factorial(n)


def _moment_integrands(params: SystemParams, n: int, power: int):
    jp = params.jacobi(n)
    expo = params.mu - 0.5

    def bulk(y):
        poly = jacobi_eval(jp, 1.0 - 2.0 * y)
        return np.arctanh(np.sqrt(y)) ** power * y**expo * (1.0 - y) * poly * poly

    def tail(u):
        # y = 1 - e^-u; artanh(sqrt y) = log(1 + sqrt y) + u/2 without cancellation
        e = np.exp(-u)
        y = 1.0 - e
        poly = jacobi_eval(jp, 2.0 * e - 1.0)
        kernel = np.log1p(np.sqrt(y)) + 0.5 * u
        return kernel**power * y**expo * e * e * poly * poly

    return bulk, tail


def x_moment(params: SystemParams, n: int, power: int, tol: float = 1e-11) -> float:
    """<x^power> (power 1 or 2) of level n on the half line.

    Evaluated as N^2 / (2 a^(power+1)) int_0^1 artanh(sqrt y)^power
    y^(mu-1/2) (1-y) P_n^2 dy.  The logarithmic growth of artanh at y = 1 is
    handled by switching to y = 1 - exp(-u) on the last subinterval.
    """
    n = _level(n)
    if power not in (1, 2):
        raise ValueError(f"power must be 1 or 2, got {power}")
    bulk, tail = _moment_integrands(params, n, power)
    y_split = -math.expm1(-_MOMENT_SPLIT_U)
    atol = tol * 1e-3
    v1, _ = integrate_adaptive(bulk, 0.0, y_split, tol, atol=atol)
    v2, _ = integrate_adaptive(tail, _MOMENT_SPLIT_U, _MOMENT_TAIL_U, tol, atol=atol)
    return normalization_sq(params, n) / (2.0 * params.a ** (power + 1)) * (v1 + v2)


def x_mean_closed_form(params: SystemParams, n: int) -> float:
    """<x> for n = 0, 1, 2 in terms of harmonic numbers / digamma of mu."""
    n = _level(n)
    mu, a = params.mu, params.a
    log2 = math.log(2.0)
    if n == 0:
        num = ((mu + 0.5) * (mu + 1.5)
               * (2 * (mu + 1) * harmonic(mu) + mu * (4 * log2 - 2) - 1 + 4 * log2))
        return num / (a * (mu + 1) * (2 * mu + 1) * (2 * mu + 3))
    if n == 1:
        p3 = (mu + 1) * (mu + 2) * (mu + 3)
        num = (8 * p3 * harmonic(mu) - 12 * mu**3 - 52 * mu**2 - 43 * mu
               + 16 * p3 * log2 + 18)
        return num / (16 * a * p3)
    if n == 2:
        p5 = (mu + 1) * (mu + 2) * (mu + 3) * (mu + 4) * (mu + 5)
        num = (-176 * mu**5 - 2208 * mu**4 - 9488 * mu**3 - 15192 * mu**2 - 3467 * mu
               + 96 * EULER_GAMMA * p5 + 192 * p5 * log2
               + 96 * p5 * digamma(mu + 1) + 6735)
        return num / (192 * a * p5)
    raise ValueError("closed-form <x> is available for n <= 2 only")


def _p2_second_derivative(params: SystemParams, n: int) -> float:
    # <p^2> = -int psi psi'' dx, reduced to a Jacobi-weighted polynomial integral
    if params.mu - 1.5 <= -1.0:
        return math.inf
    mu = params.mu
    jp = params.jacobi(n)
    rule = _fisher_rule(params, n)
    t = rule.nodes
    y = 0.5 * (1.0 - t)
    p = jacobi_eval(jp, t)
    dp = jacobi_derivative(jp, t, 1)
    d2p = jacobi_derivative(jp, t, 2)
    b = mu * (1 - y) * p - 2 * y * p - 4 * y * (1 - y) * dp
    b_y = (-(mu + 2) * p + (-2 * mu * (1 - y) + 4 * y - 4 * (1 - 2 * y)) * dp
           + 8 * y * (1 - y) * d2p)
    c = (1 - y) * ((mu - 1) * b + 2 * y * b_y) - 2 * y * b
    integral = rule.integrate(p * c)
    return -0.5 * params.a * normalization_sq(params, n) * 2.0 ** (-0.5 - mu) * integral


def p2_mean(params: SystemParams, n: int, method: str = "first") -> float:
    """<p^2> of level n.

    ``method="first"`` integrates psi'^2 (so it equals fisher_quadrature / 4);
    ``method="second"`` integrates -psi psi'' and serves as an independent
    check of the integration-by-parts identity.
    """
    n = _level(n)
    if method == "first":
        return fisher_quadrature(params, n) / 4.0
    if method == "second":
        return _p2_second_derivative(params, n)
    raise ValueError(f"unknown method {method!r}")


@dataclass(frozen=True)
class MeasureReport:
    """One row of uncertainty and Fisher measures for level n at width a.

    ``i_rho`` and ``i_gamma`` follow the naming 4<x^2> and 4<p^2>
    respectively (conventionally the position-space Fisher information is
    the latter).
    """

    n: int
    a: float
    x_mean: float
    x2_mean: float
    dx: float
    p_mean: float
    p2_mean: float
    dp: float
    heisenberg: float
    fisher_x: float
    i_rho: float
    i_gamma: float
    variance: float
    cramer_rao_v: float
    cramer_rao_prod: float
    calV0: float
    mu: float

    def to_dict(self) -> dict:
        return asdict(self)

    def violations(self, fisher_rtol: float = 1e-8) -> list[str]:
        """Invariants that fail for this row (empty when all hold)."""
        out = []
        if not (self.dx > 0 and self.dp > 0):
            out.append("non-positive spread")
        if not self.heisenberg >= 0.5:
            out.append(f"Heisenberg product {self.heisenberg} < 1/2")
        if not self.cramer_rao_v >= 1.0:
            out.append(f"I_F * V = {self.cramer_rao_v} < 1")
        if not self.cramer_rao_prod >= 1.0:
            out.append(f"I_rho * I_gamma = {self.cramer_rao_prod} < 1")
        if math.isfinite(self.fisher_x) and not math.isclose(
                self.fisher_x, self.i_gamma, rel_tol=fisher_rtol):
            out.append(f"I_F = {self.fisher_x} differs from 4<p^2> = {self.i_gamma}")
        return out


TABLE_COLUMNS = (
    ("n", "n"),
    ("a", "a"),
    ("x2_mean", "<x^2>"),
    ("x_mean", "<x>"),
    ("dx", "Delta(x)"),
    ("p2_mean", "<p^2>"),
    ("dp", "Delta(p)"),
    ("heisenberg", "Delta(x)Delta(p)"),
    ("i_rho", "I_rho"),
    ("i_gamma", "I_gamma"),
)


def report(params: SystemParams, n: int, tol: float = 1e-11) -> MeasureReport:
    """All measures of level n; <p^2> uses the second-derivative route so that
    I_F = 4<p^2> is a genuine cross-check rather than an identity."""
    n = _level(n)
    x1 = x_moment(params, n, 1, tol)
    x2 = x_moment(params, n, 2, tol)
    variance = x2 - x1 * x1
    p2 = p2_mean(params, n, method="second")
    fisher = fisher_quadrature(params, n)
    dx = math.sqrt(variance)
    dp = math.sqrt(p2)
    return MeasureReport(
        n=n,
        a=params.a,
        x_mean=x1,
        x2_mean=x2,
        dx=dx,
        p_mean=0.0,
        p2_mean=p2,
        dp=dp,
        heisenberg=dx * dp,
        fisher_x=fisher,
        i_rho=4.0 * x2,
        i_gamma=4.0 * p2,
        variance=variance,
        cramer_rao_v=fisher * variance,
        cramer_rao_prod=16.0 * x2 * p2,
        calV0=params.calV0,
        mu=params.mu,
    )
