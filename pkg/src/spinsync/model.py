"""Rotating-frame generator for two coupled dissipative two-level systems.

Subsystem A is driven by an external tone; subsystem B couples to A by an
excitation-exchange interaction of strength ``g`` and sees the drive only
through that coupling. Both spins exchange energy with independent baths at
gain rate ``gamma^g`` and loss rate ``gamma^d``. All frequencies and rates
are dimensionless multiples of B's loss rate, which sets the unit of time.

Basis convention (fixed once, used everywhere): single-spin index 0 is the
excited state |e> (sigma_z eigenvalue +1) and index 1 is the ground state
|g>; the composite basis is ordered |e_A e_B>, |e_A g_B>, |g_A e_B>,
|g_A g_B> with A as the slow index.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError
from .linalg import kron, vec

_I2 = np.eye(2, dtype=complex)
_PAULI = {
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
    "plus": np.array([[0, 1], [0, 0]], dtype=complex),
    "minus": np.array([[0, 0], [1, 0]], dtype=complex),
}
for _m in _PAULI.values():
    _m.setflags(write=False)
_I2.setflags(write=False)

SITES = ("A", "B")


@dataclass(frozen=True)
class SystemParams:
    """Physical rates and detunings, in units of subsystem B's loss rate.

    delta1/delta2 are the drive detunings of subsystems A/B, epsilon the
    drive strength (acts on A only), g the A-B coupling strength. The
    optional lab-frame frequencies omega_a/omega_b/omega are provenance
    only; when all three are present they must reproduce the detunings.
    """

    delta1: float = 0.0
    delta2: float = 0.0
    epsilon: float = 5.0
    g: float = 8.0
    gamma_a_gain: float = 10.0
    gamma_a_loss: float = 1.0
    gamma_b_gain: float = 10.0
    gamma_b_loss: float = 1.0
    omega_a: float | None = None
    omega_b: float | None = None
    omega: float | None = None

    def __post_init__(self):
        for name in ("gamma_a_gain", "gamma_a_loss", "gamma_b_gain", "gamma_b_loss"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0")
        if self.gamma_b_loss <= 0:
            raise ValueError("gamma_b_loss must be > 0 (it is the unit of rate)")
        if self.epsilon < 0:
            raise ValueError("epsilon must be >= 0")
        if None not in (self.omega_a, self.omega_b, self.omega):
            if abs(self.delta1 - (self.omega_a - self.omega)) > 1e-12:
                raise ValueError("delta1 inconsistent with omega_a - omega")
            if abs(self.delta2 - (self.omega_b - self.omega)) > 1e-12:
                raise ValueError("delta2 inconsistent with omega_b - omega")


def pauli(which: str) -> np.ndarray:
    """2x2 spin operator in the (|e>, |g>) basis.

    which is one of 'x', 'y', 'z', 'plus', 'minus'; sigma_z = diag(1, -1),
    sigma_plus maps |g> to |e>, sigma_minus is its adjoint.
    """
    try:
        return _PAULI[which]
    except KeyError:
        raise ValueError(f"unknown Pauli label {which!r}") from None


def embed(op, site: str) -> np.ndarray:
    """Embed a single-spin operator into the two-spin space at site A or B."""
    op = np.asarray(op, dtype=complex)
    if op.shape != (2, 2):
        raise DimensionMismatchError(f"expected a 2x2 operator, got {op.shape}")
    if site == "A":
        return kron(op, _I2)
    if site == "B":
        return kron(_I2, op)
    raise ValueError(f"site must be 'A' or 'B', got {site!r}")


def hamiltonian(p: SystemParams) -> np.ndarray:
    """Rotating-frame Hamiltonian of the coupled driven pair.

    Detuning terms (delta/2) sigma_z on each spin, the drive (epsilon/2)
    sigma_y on A, and the excitation-exchange coupling
    i (g/2) (sigma+_A sigma-_B - sigma+_B sigma-_A).
    """
    h = 0.5 * p.delta1 * embed(_PAULI["z"], "A")
    h = h + 0.5 * p.delta2 * embed(_PAULI["z"], "B")
    h = h + 0.5 * p.epsilon * embed(_PAULI["y"], "A")
    exchange = embed(_PAULI["plus"], "A") @ embed(_PAULI["minus"], "B")
    exchange = exchange - embed(_PAULI["plus"], "B") @ embed(_PAULI["minus"], "A")
    return h + 0.5j * p.g * exchange


def dissipator_super(o) -> np.ndarray:
    """Superoperator of the Lindblad dissipator D[O].

    Acting on the column-stacked rho it implements
    O rho O^dag - (O^dag O rho + rho O^dag O) / 2, i.e.
    conj(O) kron O - (I kron O^dag O + (O^dag O)^T kron I) / 2.
    """
    o = np.asarray(o, dtype=complex)
    if o.ndim != 2 or o.shape[0] != o.shape[1]:
        raise DimensionMismatchError(f"jump operator must be square, got {o.shape}")
    eye = np.eye(o.shape[0], dtype=complex)
    odo = o.conj().T @ o
    return kron(o.conj(), o) - 0.5 * (kron(eye, odo) + kron(odo.T, eye))


@dataclass(frozen=True)
class Liouvillian:
    """16x16 generator acting on the column-stacked two-spin density matrix."""

    mat: np.ndarray
    params: SystemParams

    def __post_init__(self):
        m = np.asarray(self.mat, dtype=complex)
        if m.shape != (16, 16):
            raise DimensionMismatchError(f"expected 16x16 generator, got {m.shape}")
        m.setflags(write=False)
        object.__setattr__(self, "mat", m)

    @property
    def dim(self) -> int:
        return 4


def liouvillian(p: SystemParams) -> Liouvillian:
    """Full master-equation generator: coherent part plus gain/loss dissipators.

    The jump operators are sigma+ sigma_z (gain, rate gamma^g/2) and
    sigma- sigma_z (loss, rate gamma^d/2) per spin. Note sigma+- sigma_z =
    -+ sigma+-; the sign cancels inside the dissipator, so these channels
    equal plain sigma+ pumping and sigma- decay.
    """
    h = hamiltonian(p)
    eye = np.eye(4, dtype=complex)
    mat = -1j * (kron(eye, h) - kron(h.T, eye))
    gain_op = _PAULI["plus"] @ _PAULI["z"]
    loss_op = _PAULI["minus"] @ _PAULI["z"]
    rates = {
        "A": (p.gamma_a_gain, p.gamma_a_loss),
        "B": (p.gamma_b_gain, p.gamma_b_loss),
    }
    for site in SITES:
        gain, loss = rates[site]
        mat = mat + 0.5 * gain * dissipator_super(embed(gain_op, site))
        mat = mat + 0.5 * loss * dissipator_super(embed(loss_op, site))
    return Liouvillian(mat=mat, params=p)


def trace_defect(lv: Liouvillian) -> float:
    """max of |vec(I)^dag L|: zero iff the generator preserves the trace."""
    left = vec(np.eye(4, dtype=complex)).conj() @ lv.mat
    return float(np.max(np.abs(left)))
