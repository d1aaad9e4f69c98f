"""Dense complex linear algebra for small (<= 16x16) operator problems.

Vectorization uses the column-stacking convention throughout: stacking the
columns of ``rho`` top to bottom, so that ``vec(A @ rho @ B) == kron(B.T, A)
@ vec(rho)``. Every superoperator in this package is written against that
identity.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateNullSpaceError,
    DimensionMismatchError,
    NoNullSpaceError,
    NotHermitianError,
    UnphysicalStateError,
)

HERMITICITY_TOL = 1e-10
TRACE_TOL = 1e-10
PSD_TOL = 1e-9
NULL_SPACE_RTOL = 1e-8


def _as_square(m, name: str = "matrix") -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatchError(f"{name} must be square, got shape {m.shape}")
    if not np.all(np.isfinite(m.view(float))):
        raise ValueError(f"{name} contains non-finite entries")
    return m


def kron(a, b) -> np.ndarray:
    """Kronecker product of two dense complex matrices."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def eig_hermitian(m) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix.

    Returns eigenvalues in ascending order and orthonormal eigenvectors as
    columns. Raises NotHermitianError if max|m - m^dag| exceeds 1e-10.
    """
    m = _as_square(m)
    dev = np.max(np.abs(m - m.conj().T)) if m.size else 0.0
    if dev > HERMITICITY_TOL:
        raise NotHermitianError(f"max|m - m^dag| = {dev:.3e} exceeds {HERMITICITY_TOL}")
    w, v = np.linalg.eigh(0.5 * (m + m.conj().T))
    return w, v


def null_vector(m) -> np.ndarray:
    """Unit-norm vector spanning the (one-dimensional) null space of m.

    Computed by SVD. The global phase is fixed deterministically: the
    largest-modulus entry (lowest index on ties) is made real positive.

    Raises NoNullSpaceError if the smallest singular value exceeds
    1e-8 * ||m||, and DegenerateNullSpaceError if two or more singular
    values fall below that threshold.
    """
    m = _as_square(m)
    _, s, vh = np.linalg.svd(m)
    norm = float(s[0]) if s.size else 0.0
    tol = NULL_SPACE_RTOL * norm
    n_small = int(np.sum(s <= tol))
    if n_small == 0:
        raise NoNullSpaceError(
            f"smallest singular value {s[-1]:.3e} exceeds {tol:.3e}"
        )
    if n_small > 1:
        raise DegenerateNullSpaceError(n_small)
    v = vh[-1].conj()
    k = int(np.argmax(np.abs(v)))
    v = v * (np.conj(v[k]) / abs(v[k]))
    return v


def vec(m) -> np.ndarray:
    """Column-stack a square matrix into a vector."""
    m = _as_square(m)
    return m.reshape(-1, order="F")


def unvec(v, dim: int) -> np.ndarray:
    """Inverse of vec: rebuild a dim x dim matrix from column-stacked form."""
    v = np.asarray(v, dtype=complex)
    if v.ndim != 1 or v.size != dim * dim:
        raise DimensionMismatchError(
            f"expected vector of length {dim * dim}, got shape {v.shape}"
        )
    return v.reshape(dim, dim, order="F")


@dataclass(frozen=True)
class DensityMatrix:
    """A validated density matrix: Hermitian, unit trace, PSD within tolerance."""

    mat: np.ndarray

    def __post_init__(self):
        m = _as_square(self.mat, "density matrix")
        dev = np.max(np.abs(m - m.conj().T))
        if dev > HERMITICITY_TOL:
            raise UnphysicalStateError(f"not Hermitian: max|rho - rho^dag| = {dev:.3e}")
        tr = np.trace(m)
        if abs(tr - 1.0) > TRACE_TOL:
            raise UnphysicalStateError(f"trace {tr} deviates from 1")
        lo = float(np.linalg.eigvalsh(0.5 * (m + m.conj().T)).min())
        if lo < -PSD_TOL:
            raise UnphysicalStateError(f"smallest eigenvalue {lo:.3e} below -{PSD_TOL}")
        m.setflags(write=False)
        object.__setattr__(self, "mat", m)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    def purity(self) -> float:
        """trace(rho^2); 1 for pure states, 1/dim for maximally mixed."""
        return float(np.real(np.trace(self.mat @ self.mat)))
