"""Steady-state extraction and its independent time-evolution cross-check."""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import DegenerateNullSpaceError, DegenerateSteadyStateError, StepUnstableError
from .linalg import DensityMatrix, null_vector, unvec, vec
from .model import Liouvillian

DEFAULT_DT = 1e-3
DEFAULT_T_END = 50.0
_TRACE_BLOWUP = 1e-3


class UniquenessReport(NamedTuple):
    null_dim: int
    spectral_gap: float


def maximally_mixed(dim: int) -> DensityMatrix:
    """The state I/dim, the default initial condition for propagation."""
    return DensityMatrix(np.eye(dim, dtype=complex) / dim)


def steady_state(lv: Liouvillian) -> DensityMatrix:
    """Unique steady state of the generator, from its null vector.

    The null vector is reshaped to a matrix, Hermitized as (rho + rho^dag)/2,
    then normalized to unit trace (in that order, for reproducibility).

    Raises DegenerateSteadyStateError when the null space is not
    one-dimensional and UnphysicalStateError when the result is not a valid
    density matrix.
    """
    try:
        v = null_vector(lv.mat)
    except DegenerateNullSpaceError as exc:
        raise DegenerateSteadyStateError(exc.multiplicity) from exc
    rho = unvec(v, lv.dim)
    rho = 0.5 * (rho + rho.conj().T)
    rho = rho / np.real(np.trace(rho))
    return DensityMatrix(rho)


def propagate(rho0: DensityMatrix, lv: Liouvillian, dt: float, t_end: float) -> DensityMatrix:
    """Classical fixed-step 4th-order integration of the master equation.

    Steps the column-stacked state with step dt for round(t_end / dt) steps
    and returns the re-Hermitized endpoint. Serves as a cross-check for
    steady_state that never touches the null-space solver.

    Raises StepUnstableError if the trace drifts from 1 by more than 1e-3
    at any step (dt too large for the generator norm).
    """
    if dt <= 0:
        raise ValueError("dt must be positive")
    if t_end < dt:
        raise ValueError("t_end must be at least dt")
    mat = lv.mat
    v = vec(rho0.mat)
    n_steps = int(round(t_end / dt))
    for step in range(n_steps):
        k1 = mat @ v
        k2 = mat @ (v + 0.5 * dt * k1)
        k3 = mat @ (v + 0.5 * dt * k2)
        k4 = mat @ (v + dt * k3)
        v = v + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        tr = np.real(v[0] + v[5] + v[10] + v[15])
        if abs(tr - 1.0) > _TRACE_BLOWUP:
            raise StepUnstableError(
                f"trace drifted to {tr:.6f} at step {step + 1}; reduce dt"
            )
    rho = unvec(v, lv.dim)
    rho = 0.5 * (rho + rho.conj().T)
    return DensityMatrix(rho)


def uniqueness_report(lv: Liouvillian) -> UniquenessReport:
    """Null-space dimension and decay gap of the generator.

    null_dim counts singular values below 1e-8 * ||L||; spectral_gap is
    -max Re(lambda) over eigenvalues with |lambda| > 1e-8 (0.0 when no such
    eigenvalue exists, e.g. for the zero generator).
    """
    s = np.linalg.svd(lv.mat, compute_uv=False)
    norm = float(s[0]) if s.size else 0.0
    null_dim = int(np.sum(s <= 1e-8 * norm))
    eigs = np.linalg.eigvals(lv.mat)
    decaying = eigs[np.abs(eigs) > 1e-8]
    gap = float(-decaying.real.max()) if decaying.size else 0.0
    return UniquenessReport(null_dim=null_dim, spectral_gap=gap)


def solver_residual(lv: Liouvillian, rho: DensityMatrix) -> float:
    """2-norm of L vec(rho): how well rho annihilates the generator."""
    return float(np.linalg.norm(lv.mat @ vec(rho.mat)))
