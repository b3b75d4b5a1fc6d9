"""Finite-difference spectrum of the transformed one-dimensional problem.

Solves  -F''(z) + W(z) F(z) = eps F(z)  on z in (0, pi/2) with

    W(z) = 3/4 tan^2 z - calV0 cot^2 z + 1/2,

independently of the analytic spectrum.  The attractive -calV0 cot^2 z
term makes F ~ z^mu at the origin, with mu from the indicial equation
mu (mu - 1) = -calV0.  A plain Dirichlet grid converges only like
h^(2 mu - 1) there, so the default ``"factored"`` scheme writes
F = sin^mu(z) g(z), which turns the problem into the self-adjoint form

    -(w g')' + w (3/4 tan^2 z + mu + 1/2) g = eps w g,   w = sin^(2 mu) z,

discretised by finite volumes on a cell-centred grid (natural condition at
z = 0, Dirichlet at z = pi/2).  Symmetrising with w^(1/2) yields a
symmetric tridiagonal matrix whose lowest eigenvalues are found by
Sturm-sequence multisection.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_banded

__all__ = [
    "SpectrumEstimate",
    "TridiagonalOperator",
    "discretize",
    "sturm_count",
    "tridiagonal_eigenvalues",
    "tridiagonal_eigenvector",
    "node_count",
    "solve_spectrum",
]

_HALF_PI = 0.5 * math.pi
_SHIFTS_PER_LEVEL = 48
_MAX_PASSES = 40


@dataclass(frozen=True)
class TridiagonalOperator:
    """Symmetric tridiagonal matrix (diag, off) on the grid ``z``."""

    diag: np.ndarray
    off: np.ndarray
    z: np.ndarray
    h: float
    z_margin: float
    scheme: str

    def dense(self) -> np.ndarray:
        return np.diag(self.diag) + np.diag(self.off, 1) + np.diag(self.off, -1)


@dataclass(frozen=True)
class SpectrumEstimate:
    eigenvalues: np.ndarray
    grid_points: int
    z_margin: float
    richardson_error: np.ndarray
    fine: np.ndarray
    coarse: np.ndarray
    scheme: str


def _indicial_mu(calV0: float) -> float:
    return 0.5 + math.sqrt(0.25 - calV0)


def discretize(calV0: float, grid_points: int, scheme: str = "factored") -> TridiagonalOperator:
    """Symmetric tridiagonal discretisation with ``grid_points`` unknowns."""
    if not 0.0 <= calV0 <= 0.25:
        raise ValueError(f"calV0 must lie in [0, 1/4], got {calV0}")
    if grid_points < 64:
        raise ValueError("use at least 64 grid points")
    m = int(grid_points)
    if scheme == "factored":
        mu = _indicial_mu(calV0)
        h = _HALF_PI / (m + 0.5)
        z = h * (np.arange(1, m + 1) - 0.5)
        faces = np.sin(h * np.arange(0, m + 1)) ** (2.0 * mu)
        w = np.sin(z) ** (2.0 * mu)
        h2 = h * h
        diag = (faces[:-1] + faces[1:]) / (h2 * w) + 0.75 * np.tan(z) ** 2 + mu + 0.5
        off = -faces[1:-1] / (h2 * np.sqrt(w[:-1] * w[1:]))
        margin = 0.5 * h
    elif scheme == "plain":
        h = _HALF_PI / (m + 1)
        z = h * np.arange(1, m + 1)
        potential = 0.75 * np.tan(z) ** 2 - calV0 / np.tan(z) ** 2 + 0.5
        diag = 2.0 / (h * h) + potential
        off = np.full(m - 1, -1.0 / (h * h))
        margin = h
    else:
        raise ValueError(f"unknown scheme {scheme!r}")
    return TridiagonalOperator(diag, off, z, h, margin, scheme)


def sturm_count(diag: np.ndarray, off: np.ndarray, shifts) -> np.ndarray:
    """Number of eigenvalues strictly below each shift (vectorised over shifts)."""
    shifts = np.asarray(shifts, dtype=float)
    off2 = off * off
    tiny = np.finfo(float).tiny ** 0.5
    q = diag[0] - shifts
    count = (q < 0).astype(np.int64)
    for i in range(1, len(diag)):
        q = np.where(q == 0.0, tiny, q)
        q = diag[i] - shifts - off2[i - 1] / q
        count += q < 0
    return count


def tridiagonal_eigenvalues(diag: np.ndarray, off: np.ndarray, k: int,
                            rtol: float = 1e-14) -> np.ndarray:
    """Lowest ``k`` eigenvalues by Sturm-sequence multisection."""
    n = len(diag)
    if not 1 <= k <= n:
        raise ValueError(f"cannot extract {k} eigenvalues from an order-{n} matrix")
    radius = np.abs(np.concatenate([off, [0.0]])) + np.abs(np.concatenate([[0.0], off]))
    lower = float(np.min(diag - radius))
    upper = float(np.max(diag + radius))
    pad = 1e-12 * max(abs(lower), abs(upper), 1.0)
    lo = np.full(k, lower - pad)
    hi = np.full(k, upper + pad)
    levels = np.arange(k)
    for _ in range(_MAX_PASSES):
        width = hi - lo
        scale = np.maximum(np.abs(lo), np.abs(hi))
        if np.all(width <= np.maximum(rtol * scale, 8 * np.finfo(float).eps * scale)):
            return 0.5 * (lo + hi)
        frac = np.arange(1, _SHIFTS_PER_LEVEL + 1) / (_SHIFTS_PER_LEVEL + 1)
        shifts = np.unique((lo[:, None] + width[:, None] * frac[None, :]).ravel())
        counts = sturm_count(diag, off, shifts)
        for j in levels:
            below = shifts[counts <= j]
            above = shifts[counts > j]
            if below.size:
                lo[j] = max(lo[j], below.max())
            if above.size:
                hi[j] = min(hi[j], above.min())
    raise RuntimeError("Sturm multisection did not converge")


def tridiagonal_eigenvector(diag: np.ndarray, off: np.ndarray, eigenvalue: float,
                            iterations: int = 3) -> np.ndarray:
    """Unit eigenvector for a known eigenvalue by inverse iteration."""
    n = len(diag)
    shift = eigenvalue * (1.0 + 1e-10) + 1e-12
    banded = np.zeros((3, n))
    banded[0, 1:] = off
    banded[1] = diag - shift
    banded[2, :-1] = off
    v = np.ones(n) / math.sqrt(n)
    for _ in range(iterations):
        v = solve_banded((1, 1), banded, v)
        v /= np.linalg.norm(v)
    return v if v[np.argmax(np.abs(v))] > 0 else -v


def node_count(vector: np.ndarray, rel_floor: float = 1e-8) -> int:
    """Sign changes of a sampled function, ignoring entries below the noise floor."""
    vector = np.asarray(vector)
    significant = vector[np.abs(vector) > rel_floor * np.max(np.abs(vector))]
    return int(np.count_nonzero(np.diff(np.sign(significant)) != 0))


def _grid_ratio(coarse: int, fine: int, scheme: str) -> float:
    # h_coarse / h_fine for the two grid families
    offset = 0.5 if scheme == "factored" else 1.0
    return (fine + offset) / (coarse + offset)


def solve_spectrum(calV0: float, grid_points: int = 4096, num_levels: int = 4,
                   scheme: str = "factored", tol: float | None = None) -> SpectrumEstimate:
    """Richardson-extrapolated lowest eigenvalues from grids of
    ``grid_points // 2`` and ``grid_points`` unknowns.

    ``richardson_error`` is |extrapolated - fine|.  A ``RuntimeWarning`` is
    issued when its ratio to the eigenvalue exceeds ``tol``.
    """
    if num_levels < 1 or num_levels > grid_points // 8:
        raise ValueError("num_levels must be small relative to grid_points")
    coarse_m = grid_points // 2
    ops = [discretize(calV0, m, scheme) for m in (coarse_m, grid_points)]
    coarse, fine = (tridiagonal_eigenvalues(op.diag, op.off, num_levels) for op in ops)
    r2 = _grid_ratio(coarse_m, grid_points, scheme) ** 2
    extrapolated = (r2 * fine - coarse) / (r2 - 1.0)
    err = np.maximum(np.abs(extrapolated - fine), np.finfo(float).eps * np.abs(fine))
    if tol is not None and np.any(err / np.abs(extrapolated) > tol):
        warnings.warn(
            f"Richardson error estimate exceeds tolerance {tol:g}", RuntimeWarning, stacklevel=2
        )
    return SpectrumEstimate(
        eigenvalues=extrapolated,
        grid_points=int(grid_points),
        z_margin=ops[1].z_margin,
        richardson_error=err,
        fine=fine,
        coarse=coarse,
        scheme=scheme,
    )
