"""Self-contained invariant suite behind the `check` subcommand.

Each check prints one `PASS`/`FAIL` line with the measured quantity, so a
run documents not only that the invariants hold but by what margin.
"""

from __future__ import annotations

import dataclasses
import math

import numpy as np

from .config import RunConfig
from .linalg import DensityMatrix, unvec, vec
from .model import liouvillian, trace_defect
from .phase import partial_trace_A, q_grid, s_distribution, s_phi
from .steady import maximally_mixed, propagate, solver_residual, steady_state, uniqueness_report


def _closed_form_s(rho_b: DensityMatrix, phi: float) -> float:
    return 0.25 * float(np.real(rho_b.mat[0, 1] * np.exp(1j * phi)))


def run_checks(cfg: RunConfig, out=print) -> bool:
    """Run the invariant suite on the configured parameters; True iff all pass."""
    results = []

    def record(name: str, ok: bool, detail: str) -> None:
        results.append(ok)
        out(f"{'PASS' if ok else 'FAIL'} {name} ({detail})")

    lv = liouvillian(cfg.params)

    defect = trace_defect(lv)
    record("trace-preserving generator", defect <= 1e-12, f"left-null defect {defect:.2e}")

    eigs = np.linalg.eigvals(lv.mat)
    max_re = float(eigs.real.max())
    record("spectral stability", max_re <= 1e-10, f"max Re(lambda) {max_re:.2e}")

    report = uniqueness_report(lv)
    record(
        "unique steady state",
        report.null_dim == 1,
        f"null_dim {report.null_dim}, gap {report.spectral_gap:.3f}",
    )

    rho = steady_state(lv)
    herm = float(np.max(np.abs(rho.mat - rho.mat.conj().T)))
    tr_err = abs(float(np.real(np.trace(rho.mat))) - 1.0)
    min_eig = float(np.linalg.eigvalsh(rho.mat).min())
    residual = solver_residual(lv, rho)
    record(
        "steady state physical",
        herm <= 1e-10 and tr_err <= 1e-10 and min_eig >= -1e-9 and residual <= 1e-9,
        f"herm {herm:.1e}, trace err {tr_err:.1e}, min eig {min_eig:.1e}, residual {residual:.1e}",
    )

    purity = rho.purity()
    record("mixed steady state", purity < 1.0 + 1e-10, f"purity {purity:.6f}")

    rng = np.random.default_rng(20240817)
    worst_herm = 0.0
    for _ in range(20):
        x = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        h = x + x.conj().T
        image = unvec(lv.mat @ vec(h), 4)
        worst_herm = max(worst_herm, float(np.max(np.abs(image - image.conj().T))))
    record("Hermiticity preserved", worst_herm <= 1e-12, f"worst defect {worst_herm:.2e}")

    evolved = propagate(maximally_mixed(4), lv, cfg.dt, cfg.t_end)
    agree = float(np.max(np.abs(evolved.mat - rho.mat)))
    record("solver cross-check", agree <= 1e-6, f"null vs evolve {agree:.2e}")

    rho_b = partial_trace_A(rho)
    grid = q_grid(rho_b, cfg.n_theta, cfg.n_phi)
    norm_err = abs(grid.normalization() - 1.0)
    record("Q normalization", norm_err <= 1e-6, f"|integral - 1| {norm_err:.2e}")

    worst_q = 0.0
    for phi in (-math.pi, -1.0, 0.0, 0.5, 2.0):
        quad = s_phi(rho_b, phi, cfg.n_theta, "centered")
        worst_q = max(worst_q, abs(quad - _closed_form_s(rho_b, phi)))
    record("measure closed form", worst_q <= 1e-9, f"worst quadrature error {worst_q:.2e}")

    dist = s_distribution(rho_b, cfg.n_phi, cfg.n_theta, "centered")
    oracle = abs(dist.s_max - abs(rho_b.mat[0, 1]) / 4.0)
    record("locking strength oracle", oracle <= 1e-9, f"|s_max - |rho_eg|/4| {oracle:.2e}")

    # Decoupled, undriven reference: gain/loss balance fixes the populations.
    quiet = dataclasses.replace(cfg.params, epsilon=0.0, g=0.0)
    rho_q = steady_state(liouvillian(quiet))
    pops = np.real(np.diag(partial_trace_A(rho_q).mat))
    gg, gd = quiet.gamma_b_gain, quiet.gamma_b_loss
    target = np.array([gg, gd]) / (gg + gd)
    bal_err = float(np.max(np.abs(pops - target)))
    record("gain/loss balance", bal_err <= 1e-10, f"population error {bal_err:.2e}")

    return all(results)
