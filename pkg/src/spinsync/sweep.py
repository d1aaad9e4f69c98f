"""Parameter sweeps: s(phi) maps and synchronization (Arnold-tongue) maps.

Grid points are independent work items written into preallocated arrays by
index, so results are bit-identical regardless of worker count or
evaluation order. A point whose steady state is degenerate or unphysical is
flagged (NaN value, diagnostics kept) instead of aborting the sweep.
"""

from __future__ import annotations

import dataclasses
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateSteadyStateError, UnphysicalStateError
from .model import SystemParams, liouvillian
from .phase import BASELINES, _check_resolution, partial_trace_A, s_distribution
from .steady import solver_residual, steady_state, uniqueness_report

AXIS1_NAMES = ("delta2", "epsilon", "g")
AXIS2_NAMES = ("phi", "delta2")
REDUCTIONS = ("s_of_phi", "max_s")


@dataclass(frozen=True)
class AxisSpec:
    """One swept axis: parameter name plus a uniform (lo, hi, count) grid.

    The phi axis is right-open (grid covers [-pi, pi) without the endpoint);
    parameter axes include both endpoints.
    """

    name: str
    lo: float
    hi: float
    count: int

    def __post_init__(self):
        if self.name not in AXIS1_NAMES + AXIS2_NAMES:
            raise ValueError(f"unknown axis name {self.name!r}")
        if self.count < 2:
            raise ValueError(f"axis {self.name}: count must be >= 2, got {self.count}")
        if not self.lo < self.hi:
            raise ValueError(f"axis {self.name}: need lo < hi, got [{self.lo}, {self.hi}]")

    def values(self) -> np.ndarray:
        if self.name == "phi":
            return self.lo + (self.hi - self.lo) * np.arange(self.count) / self.count
        return np.linspace(self.lo, self.hi, self.count)


def phi_axis(n_phi: int) -> AxisSpec:
    """The canonical right-open azimuthal axis matching phi_grid(n_phi)."""
    return AxisSpec(name="phi", lo=-math.pi, hi=math.pi, count=n_phi)


@dataclass(frozen=True)
class SweepSpec:
    """A full sweep request: base parameters, two axes, and the reduction.

    reduce='s_of_phi' records s(phi) rows (axis2 must be phi);
    reduce='max_s' records the maximum of s over phi at each grid point
    (axis2 must be delta2, overriding the base parameters cell by cell).
    """

    base: SystemParams
    axis1: AxisSpec
    axis2: AxisSpec
    reduce: str
    n_theta: int = 181
    n_phi: int = 360
    baseline: str = "centered"

    def __post_init__(self):
        if self.reduce not in REDUCTIONS:
            raise ValueError(f"reduce must be one of {REDUCTIONS}, got {self.reduce!r}")
        if self.axis1.name not in AXIS1_NAMES:
            raise ValueError(f"axis1 must be one of {AXIS1_NAMES}, got {self.axis1.name!r}")
        if self.reduce == "s_of_phi" and self.axis2.name != "phi":
            raise ValueError("reduce='s_of_phi' requires axis2 to be the phi axis")
        if self.reduce == "max_s" and self.axis2.name != "delta2":
            raise ValueError("reduce='max_s' requires axis2 to be the delta2 axis")
        if self.axis1.name == "epsilon" and self.axis1.lo < 0:
            raise ValueError("epsilon axis cannot include negative values")
        # Surface bad resolutions/baselines before any point runs.
        _check_resolution(self.n_theta, self.n_phi)
        if self.baseline not in BASELINES:
            raise ValueError(f"unknown baseline {self.baseline!r}")


@dataclass(frozen=True)
class SweepResult:
    """Values plus per-point solver diagnostics, all shaped (axis1, axis2)."""

    spec: SweepSpec
    axis1_values: np.ndarray
    axis2_values: np.ndarray
    values: np.ndarray
    null_dim: np.ndarray
    spectral_gap: np.ndarray
    residual: np.ndarray

    def __post_init__(self):
        for arr in (
            self.axis1_values,
            self.axis2_values,
            self.values,
            self.null_dim,
            self.spectral_gap,
            self.residual,
        ):
            arr.setflags(write=False)

    def flagged(self) -> np.ndarray:
        """Boolean mask of points whose steady state could not be used."""
        return ~np.isfinite(self.values)


def _solve_point(params: SystemParams, spec: SweepSpec):
    """Steady state -> reduced state -> phase distribution, with diagnostics."""
    lv = liouvillian(params)
    report = uniqueness_report(lv)
    try:
        rho = steady_state(lv)
    except (DegenerateSteadyStateError, UnphysicalStateError):
        return None, report, math.nan
    residual = solver_residual(lv, rho)
    rho_b = partial_trace_A(rho)
    dist = s_distribution(rho_b, spec.n_phi, spec.n_theta, spec.baseline)
    return dist, report, residual


def run_sweep(spec: SweepSpec, jobs: int = 1) -> SweepResult:
    """Execute the sweep, optionally with a thread pool over axis1 rows."""
    a1 = spec.axis1.values()
    a2 = spec.axis2.values()
    shape = (spec.axis1.count, spec.axis2.count)
    values = np.full(shape, math.nan)
    null_dim = np.zeros(shape, dtype=int)
    gap = np.full(shape, math.nan)
    residual = np.full(shape, math.nan)

    def fill_row(i: int) -> None:
        if spec.reduce == "s_of_phi":
            params = dataclasses.replace(spec.base, **{spec.axis1.name: float(a1[i])})
            dist, report, resid = _solve_point(params, spec)
            null_dim[i, :] = report.null_dim
            gap[i, :] = report.spectral_gap
            residual[i, :] = resid
            if dist is not None:
                values[i, :] = dist.s_values
        else:
            for j in range(spec.axis2.count):
                params = dataclasses.replace(
                    spec.base,
                    **{spec.axis1.name: float(a1[i]), "delta2": float(a2[j])},
                )
                dist, report, resid = _solve_point(params, spec)
                null_dim[i, j] = report.null_dim
                gap[i, j] = report.spectral_gap
                residual[i, j] = resid
                if dist is not None:
                    values[i, j] = dist.s_max

    if jobs <= 1:
        for i in range(spec.axis1.count):
            fill_row(i)
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            list(pool.map(fill_row, range(spec.axis1.count)))

    return SweepResult(
        spec=spec,
        axis1_values=a1,
        axis2_values=a2,
        values=values,
        null_dim=null_dim,
        spectral_gap=gap,
        residual=residual,
    )


def arnold_tongue(spec: SweepSpec, jobs: int = 1) -> SweepResult:
    """Synchronization-strength map over (drive-or-coupling, detuning).

    Each cell holds the maximum of s(phi) for the steady state at that
    parameter point; axis1 must be epsilon or g.
    """
    if spec.reduce != "max_s":
        raise ValueError("arnold_tongue requires reduce='max_s'")
    if spec.axis1.name not in ("epsilon", "g"):
        raise ValueError("arnold_tongue sweeps epsilon or g on axis1")
    return run_sweep(spec, jobs=jobs)
