"""Simulation of indirect synchronization in two coupled dissipative
two-level systems: master-equation steady states, Husimi Q phase
portraits, the azimuthal locking measure, and parameter sweeps."""

from .errors import (
    BadResolutionError,
    ConfigError,
    ConfigParseError,
    DegenerateNullSpaceError,
    DegenerateSteadyStateError,
    DimensionMismatchError,
    InvalidValueError,
    NoNullSpaceError,
    NotHermitianError,
    SpinSyncError,
    StepUnstableError,
    UnknownKeyError,
    UnphysicalStateError,
    UsageError,
)
from .linalg import DensityMatrix, eig_hermitian, kron, null_vector, unvec, vec
from .model import (
    Liouvillian,
    SystemParams,
    dissipator_super,
    embed,
    hamiltonian,
    liouvillian,
    pauli,
    trace_defect,
)
from .steady import (
    UniquenessReport,
    maximally_mixed,
    propagate,
    solver_residual,
    steady_state,
    uniqueness_report,
)
from .phase import (
    BASELINES,
    PhaseDistribution,
    QGrid,
    coherent_state,
    husimi_q,
    partial_trace_A,
    phi_grid,
    q_grid,
    s_distribution,
    s_phi,
    simpson_weights,
    theta_grid,
    wrap_phi,
)
from .sweep import AxisSpec, SweepResult, SweepSpec, arnold_tongue, phi_axis, run_sweep
from .config import RunConfig, apply_overrides, emit_config, parse_config
from .serialize import (
    emit_qgrid,
    emit_sdist,
    emit_states,
    emit_sweep,
    render_heatmap,
)
from .checks import run_checks
from .cli import cli_main

__version__ = "0.1.0"
