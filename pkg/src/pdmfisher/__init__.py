"""Bound states, Fisher information and uncertainty products of the
position-dependent-mass Schrodinger system with m(x) = m0 sech^2(ax) and
V(x) = -V0 csch^2(ax)."""

from .estimator import BoundStateMeasures, SpectrumOracle
from .measures import (
    MeasureReport,
    fisher_closed_form,
    fisher_quadrature,
    p2_mean,
    report,
    x_mean_closed_form,
    x_moment,
)
from .model import (
    QuantumState,
    SystemParams,
    derive_params,
    energy,
    hyp_params,
    normalization_sq,
    params_from_v0,
    wavefunction_rho,
    wavefunction_x,
)
from .oracle import SpectrumEstimate, solve_spectrum
from .quadrature import QuadratureError, QuadratureRule, gauss_jacobi_rule

__version__ = "0.1.0"

__all__ = [
    "BoundStateMeasures",
    "MeasureReport",
    "QuadratureError",
    "QuadratureRule",
    "QuantumState",
    "SpectrumEstimate",
    "SpectrumOracle",
    "SystemParams",
    "derive_params",
    "energy",
    "fisher_closed_form",
    "fisher_quadrature",
    "gauss_jacobi_rule",
    "hyp_params",
    "normalization_sq",
    "p2_mean",
    "params_from_v0",
    "report",
    "solve_spectrum",
    "wavefunction_rho",
    "wavefunction_x",
    "x_mean_closed_form",
    "x_moment",
]
