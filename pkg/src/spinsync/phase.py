"""Husimi Q phase portraits and the azimuthal locking measure for spin B.

The Q function of the reduced state is Q(theta, phi) =
<theta,phi| rho_B |theta,phi> / (2 pi) over spin coherent states
|theta,phi> = cos(theta/2) |e> + e^{i phi} sin(theta/2) |g>, so theta = 0
is the excited pole. Integrating out theta with the sin(theta) measure and
subtracting a flat baseline gives the phase distribution s(phi) whose peak
height measures locking strength and whose argmax is the locking phase.

Two baseline conventions are supported. 'centered' subtracts 1/(2 pi), the
theta-marginal of any diagonal (phase-symmetric) state, so s(phi) == 0
exactly when there is no locking and s integrates to zero over phi.
'paper' subtracts 1/(4 pi) instead, under which a phase-symmetric state
sits at the flat value 1/(4 pi).

For any qubit state the closed form s_centered(phi) =
Re(rho_eg e^{i phi}) / 4 holds, with rho_eg = <e| rho_B |g>. The quadrature
path below is kept independent of it; the closed form is the test oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BadResolutionError, DimensionMismatchError, UnphysicalStateError
from .linalg import DensityMatrix

BASELINES = {
    "centered": 1.0 / (2.0 * math.pi),
    "paper": 1.0 / (4.0 * math.pi),
}

DEFAULT_N_THETA = 181
DEFAULT_N_PHI = 360

_NEGATIVE_Q_TOL = 1e-14


def wrap_phi(phi: float) -> float:
    """Wrap an azimuthal angle into [-pi, pi)."""
    return float((phi + math.pi) % (2.0 * math.pi) - math.pi)


def theta_grid(n_theta: int) -> np.ndarray:
    """Uniform polar grid on [0, pi], endpoints included; odd count required."""
    _check_resolution(n_theta, 4)
    return np.linspace(0.0, math.pi, n_theta)


def phi_grid(n_phi: int) -> np.ndarray:
    """Uniform azimuthal grid covering [-pi, pi), right endpoint open."""
    _check_resolution(3, n_phi)
    return -math.pi + 2.0 * math.pi * np.arange(n_phi) / n_phi


def simpson_weights(n_theta: int) -> np.ndarray:
    """Composite Simpson weights on the theta grid (odd node count)."""
    _check_resolution(n_theta, 4)
    w = np.ones(n_theta)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    return w * (math.pi / (n_theta - 1)) / 3.0


def _check_resolution(n_theta: int, n_phi: int) -> None:
    if n_theta % 2 == 0:
        raise BadResolutionError(f"n_theta must be odd for Simpson quadrature, got {n_theta}")
    if n_theta < 3:
        raise BadResolutionError(f"n_theta must be >= 3, got {n_theta}")
    if n_phi < 4:
        raise BadResolutionError(f"n_phi must be >= 4, got {n_phi}")


def _require_qubit(rho_b: DensityMatrix) -> np.ndarray:
    if rho_b.dim != 2:
        raise DimensionMismatchError(f"expected a 2x2 state, got dim {rho_b.dim}")
    return rho_b.mat


def partial_trace_A(rho: DensityMatrix) -> DensityMatrix:
    """Reduce the composite state to subsystem B by tracing out A."""
    if rho.dim != 4:
        raise DimensionMismatchError(f"expected the 4x4 composite state, got dim {rho.dim}")
    blocks = rho.mat.reshape(2, 2, 2, 2)
    return DensityMatrix(np.einsum("kmkn->mn", blocks))


def coherent_state(theta: float, phi: float) -> np.ndarray:
    """Spin coherent state cos(theta/2) |e> + e^{i phi} sin(theta/2) |g>."""
    return np.array(
        [math.cos(theta / 2.0), np.exp(1j * phi) * math.sin(theta / 2.0)],
        dtype=complex,
    )


def husimi_q(rho_b: DensityMatrix, theta: float, phi: float) -> float:
    """Husimi Q value <theta,phi| rho_B |theta,phi> / (2 pi)."""
    mat = _require_qubit(rho_b)
    v = coherent_state(theta, phi)
    return float(np.real(np.vdot(v, mat @ v)) / (2.0 * math.pi))


def _q_values(mat: np.ndarray, thetas: np.ndarray, phis: np.ndarray) -> np.ndarray:
    """Q sampled on the outer grid thetas x phis via the coherent-state form."""
    states = np.empty((2, thetas.size, phis.size), dtype=complex)
    states[0] = np.cos(thetas / 2.0)[:, None] * np.ones(phis.size)[None, :]
    states[1] = np.sin(thetas / 2.0)[:, None] * np.exp(1j * phis)[None, :]
    rho_states = np.einsum("ab,bij->aij", mat, states)
    return np.real(np.einsum("aij,aij->ij", states.conj(), rho_states)) / (2.0 * math.pi)


@dataclass(frozen=True)
class QGrid:
    """Husimi Q sampled on a theta x phi product grid."""

    thetas: np.ndarray
    phis: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        for arr in (self.thetas, self.phis, self.values):
            arr.setflags(write=False)

    def normalization(self) -> float:
        """Integral of Q over the sphere: Simpson in theta, rectangle in phi."""
        w = simpson_weights(self.thetas.size)
        dphi = 2.0 * math.pi / self.phis.size
        return float((w @ (np.sin(self.thetas)[:, None] * self.values)).sum() * dphi)


def q_grid(
    rho_b: DensityMatrix,
    n_theta: int = DEFAULT_N_THETA,
    n_phi: int = DEFAULT_N_PHI,
) -> QGrid:
    """Sample the Husimi Q on the standard grid; tiny negatives are clipped.

    Values below -1e-14 indicate an unphysical input state and raise.
    """
    mat = _require_qubit(rho_b)
    _check_resolution(n_theta, n_phi)
    thetas = theta_grid(n_theta)
    phis = phi_grid(n_phi)
    values = _q_values(mat, thetas, phis)
    lo = float(values.min())
    if lo < -_NEGATIVE_Q_TOL:
        raise UnphysicalStateError(f"Q reaches {lo:.3e}, below -{_NEGATIVE_Q_TOL}")
    values = np.where(values < 0.0, 0.0, values)
    return QGrid(thetas=thetas, phis=phis, values=values)


def s_phi(
    rho_b: DensityMatrix,
    phi: float,
    n_theta: int = DEFAULT_N_THETA,
    baseline: str = "centered",
) -> float:
    """Phase distribution at a single phi: Simpson integral of sin(theta) Q
    over theta minus the baseline constant."""
    mat = _require_qubit(rho_b)
    base = _baseline_constant(baseline)
    thetas = theta_grid(n_theta)
    w = simpson_weights(n_theta)
    q = _q_values(mat, thetas, np.array([phi]))[:, 0]
    return float(w @ (np.sin(thetas) * q) - base)


def _baseline_constant(baseline: str) -> float:
    try:
        return BASELINES[baseline]
    except KeyError:
        raise ValueError(f"baseline must be one of {tuple(BASELINES)}, got {baseline!r}") from None


@dataclass(frozen=True)
class PhaseDistribution:
    """s(phi) on the azimuthal grid, with its maximum and the locking phase.

    phi_star is the grid point attaining s_max; exact ties resolve to the
    smallest |phi|, preferring the negative sign.
    """

    phis: np.ndarray
    s_values: np.ndarray
    baseline: str
    s_max: float
    phi_star: float

    def __post_init__(self):
        self.phis.setflags(write=False)
        self.s_values.setflags(write=False)


def locking_phase(phis: np.ndarray, values: np.ndarray) -> tuple[float, float]:
    """Maximum of a sampled distribution and the phase attaining it.

    Exact ties resolve deterministically to the smallest |phi|, negative
    sign first.
    """
    v_max = float(np.max(values))
    ties = np.flatnonzero(values == v_max)
    k = min(ties, key=lambda i: (abs(phis[i]), 0 if phis[i] < 0 else 1))
    return v_max, float(phis[k])


def s_distribution(
    rho_b: DensityMatrix,
    n_phi: int = DEFAULT_N_PHI,
    n_theta: int = DEFAULT_N_THETA,
    baseline: str = "centered",
) -> PhaseDistribution:
    """Sample s(phi) over the full azimuthal grid."""
    mat = _require_qubit(rho_b)
    base = _baseline_constant(baseline)
    _check_resolution(n_theta, n_phi)
    thetas = theta_grid(n_theta)
    phis = phi_grid(n_phi)
    w = simpson_weights(n_theta)
    q = _q_values(mat, thetas, phis)
    s_values = w @ (np.sin(thetas)[:, None] * q) - base
    s_max, phi_star = locking_phase(phis, s_values)
    return PhaseDistribution(
        phis=phis,
        s_values=s_values,
        baseline=baseline,
        s_max=s_max,
        phi_star=phi_star,
    )
