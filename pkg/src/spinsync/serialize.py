"""Deterministic CSV/JSON serialization and a dependency-free PPM heatmap.

CSV floats are printed with 17 significant digits ('%.17g'), enough to
round-trip IEEE doubles exactly; JSON uses Python's shortest round-trip
float repr. All output uses '\n' line endings and '.' decimal separators,
so identical inputs always produce identical bytes.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import numpy as np

from .linalg import DensityMatrix
from .phase import PhaseDistribution, QGrid
from .steady import UniquenessReport
from .sweep import SweepResult

# Piecewise-linear colormap: dark violet through magenta/orange to yellow.
COLORMAP_ANCHORS = (
    (0.00, (13, 8, 135)),
    (0.25, (126, 3, 168)),
    (0.50, (204, 71, 120)),
    (0.75, (248, 149, 64)),
    (1.00, (240, 249, 33)),
)
NAN_COLOR = (128, 128, 128)


def fmt17(x: float) -> str:
    """Format a float with 17 significant digits (round-trip exact)."""
    return format(float(x), ".17g")


def _check_format(format: str) -> None:
    if format not in ("csv", "json"):
        raise ValueError(f"format must be 'csv' or 'json', got {format!r}")


def _json_bytes(obj) -> bytes:
    return (json.dumps(obj) + "\n").encode("ascii")


def emit_qgrid(grid: QGrid, format: str = "csv") -> bytes:
    """Serialize a Q grid; CSV rows are theta-major `theta,phi,q`."""
    _check_format(format)
    if format == "json":
        return _json_bytes(
            {
                "thetas": grid.thetas.tolist(),
                "phis": grid.phis.tolist(),
                "values": grid.values.tolist(),
            }
        )
    lines = ["theta,phi,q"]
    for i, theta in enumerate(grid.thetas):
        for j, phi in enumerate(grid.phis):
            lines.append(f"{fmt17(theta)},{fmt17(phi)},{fmt17(grid.values[i, j])}")
    return ("\n".join(lines) + "\n").encode("ascii")


def emit_sdist(dist: PhaseDistribution, format: str = "csv") -> bytes:
    """Serialize a phase distribution; CSV carries a trailing summary comment."""
    _check_format(format)
    if format == "json":
        return _json_bytes(
            {
                "phis": dist.phis.tolist(),
                "s_values": dist.s_values.tolist(),
                "s_max": float(dist.s_max),
                "phi_star": float(dist.phi_star),
                "baseline": dist.baseline,
            }
        )
    lines = ["phi,s"]
    for phi, s in zip(dist.phis, dist.s_values):
        lines.append(f"{fmt17(phi)},{fmt17(s)}")
    lines.append(
        f"# s_max={fmt17(dist.s_max)} phi_star={fmt17(dist.phi_star)} baseline={dist.baseline}"
    )
    return ("\n".join(lines) + "\n").encode("ascii")


def emit_sweep(result: SweepResult, format: str = "csv") -> bytes:
    """Serialize a sweep; CSV rows are `axis1,axis2,value,null_dim,gap,residual`."""
    _check_format(format)
    if format == "json":
        return _json_bytes(
            {
                "axis1_name": result.spec.axis1.name,
                "axis2_name": result.spec.axis2.name,
                "reduce": result.spec.reduce,
                "baseline": result.spec.baseline,
                "axis1_values": result.axis1_values.tolist(),
                "axis2_values": result.axis2_values.tolist(),
                "values": result.values.tolist(),
                "null_dim": result.null_dim.tolist(),
                "spectral_gap": result.spectral_gap.tolist(),
                "residual": result.residual.tolist(),
            }
        )
    lines = ["axis1,axis2,value,null_dim,gap,residual"]
    for i, a1 in enumerate(result.axis1_values):
        for j, a2 in enumerate(result.axis2_values):
            lines.append(
                f"{fmt17(a1)},{fmt17(a2)},{fmt17(result.values[i, j])},"
                f"{int(result.null_dim[i, j])},{fmt17(result.spectral_gap[i, j])},"
                f"{fmt17(result.residual[i, j])}"
            )
    return ("\n".join(lines) + "\n").encode("ascii")


def emit_states(
    rho_ab: DensityMatrix,
    rho_b: DensityMatrix,
    report: UniquenessReport,
    residual: float,
    format: str = "csv",
) -> bytes:
    """Serialize the composite and reduced steady states with diagnostics."""
    _check_format(format)
    if format == "json":
        return _json_bytes(
            {
                "rho_ab_re": rho_ab.mat.real.tolist(),
                "rho_ab_im": rho_ab.mat.imag.tolist(),
                "rho_b_re": rho_b.mat.real.tolist(),
                "rho_b_im": rho_b.mat.imag.tolist(),
                "null_dim": int(report.null_dim),
                "spectral_gap": float(report.spectral_gap),
                "residual": float(residual),
            }
        )
    lines = ["matrix,row,col,re,im"]
    for name, state in (("rho_ab", rho_ab), ("rho_b", rho_b)):
        for r in range(state.dim):
            for c in range(state.dim):
                z = state.mat[r, c]
                lines.append(f"{name},{r},{c},{fmt17(z.real)},{fmt17(z.imag)}")
    lines.append(
        f"# null_dim={report.null_dim} spectral_gap={fmt17(report.spectral_gap)}"
        f" residual={fmt17(residual)}"
    )
    return ("\n".join(lines) + "\n").encode("ascii")


def _colormap_lut() -> np.ndarray:
    lut = np.empty((256, 3), dtype=np.uint8)
    xs = np.arange(256) / 255.0
    stops = [a for a, _ in COLORMAP_ANCHORS]
    for ch in range(3):
        ys = [rgb[ch] for _, rgb in COLORMAP_ANCHORS]
        lut[:, ch] = np.rint(np.interp(xs, stops, ys)).astype(np.uint8)
    return lut


_LUT = _colormap_lut()


def render_heatmap(matrix, path) -> None:
    """Write a matrix as a binary PPM (P6) image, one pixel per cell.

    Finite values map linearly onto the 256-entry colormap between the
    matrix minimum and maximum (a constant matrix maps to the low end);
    non-finite cells render as the gray sentinel color.
    """
    m = np.asarray(matrix, dtype=float)
    if m.ndim != 2 or m.size == 0:
        raise ValueError(f"expected a non-empty 2-D matrix, got shape {m.shape}")
    finite = np.isfinite(m)
    idx = np.zeros(m.shape, dtype=np.intp)
    if finite.any():
        lo = float(m[finite].min())
        hi = float(m[finite].max())
        if hi > lo:
            scaled = np.clip((m - lo) / (hi - lo), 0.0, 1.0)
            scaled[~finite] = 0.0
            idx = np.rint(scaled * 255).astype(np.intp)
    rgb = _LUT[idx]
    rgb[~finite] = NAN_COLOR
    height, width = m.shape
    header = f"P6\n{width} {height}\n255\n".encode("ascii")
    Path(path).write_bytes(header + rgb.tobytes())


def write_output(data: bytes, output_path: str) -> None:
    """Write bytes to a file, or to stdout when the path is empty."""
    if output_path:
        Path(output_path).write_bytes(data)
    else:
        sys.stdout.write(data.decode("ascii"))
