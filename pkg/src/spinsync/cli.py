"""Command line entry points.

Subcommands: steady, qfunc, sdist, sweep, tongue, check. Exit codes:
0 success, 1 usage/configuration error, 2 numerical error (degenerate or
unphysical steady state, unstable integration).
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
from pathlib import Path

from .config import RunConfig, apply_overrides, parse_config
from .errors import (
    BadResolutionError,
    ConfigError,
    DegenerateNullSpaceError,
    DegenerateSteadyStateError,
    DimensionMismatchError,
    NoNullSpaceError,
    NotHermitianError,
    StepUnstableError,
    UnphysicalStateError,
    UsageError,
)
from .checks import run_checks
from .model import liouvillian
from .phase import partial_trace_A, q_grid, s_distribution
from .serialize import (
    emit_qgrid,
    emit_sdist,
    emit_states,
    emit_sweep,
    render_heatmap,
    write_output,
)
from .steady import maximally_mixed, propagate, solver_residual, steady_state, uniqueness_report
from .sweep import AxisSpec, SweepSpec, arnold_tongue, phi_axis, run_sweep

# Default axis ranges (lo, hi, count) per swept parameter, in loss-rate units.
SWEEP_AXIS_DEFAULTS = {
    "delta2": (-10.0, 10.0, 81),
    "epsilon": (0.0, 30.0, 81),
    "g": (0.0, 30.0, 81),
}
TONGUE_AXIS_DEFAULTS = {
    "epsilon": (0.0, 10.0, 61),
    "g": (0.0, 16.0, 61),
}
TONGUE_AXIS2_DEFAULT = (-10.0, 10.0, 61)

_NUMERICAL_ERRORS = (
    BadResolutionError,
    DegenerateNullSpaceError,
    DegenerateSteadyStateError,
    DimensionMismatchError,
    NoNullSpaceError,
    NotHermitianError,
    StepUnstableError,
    UnphysicalStateError,
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="flat key = value config file")
    common.add_argument(
        "--set",
        dest="overrides",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="override a config key (repeatable)",
    )
    common.add_argument("--out", metavar="PATH", help="output file (default: stdout)")
    common.add_argument("--format", choices=("csv", "json"), help="output format")
    common.add_argument("--jobs", type=int, default=1, metavar="N", help="worker threads")
    common.add_argument("--heatmap", metavar="PATH", help="also render a PPM heatmap")

    parser = _Parser(
        prog="spinsync",
        description="Steady states and synchronization measures for two coupled "
        "dissipative two-level systems.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("steady", parents=[common], help="print the steady state of both spins")
    sub.add_parser("qfunc", parents=[common], help="Husimi Q grid of the reduced state")
    sub.add_parser("sdist", parents=[common], help="phase distribution s(phi)")
    sub.add_parser("sweep", parents=[common], help="s(phi) map over delta2, epsilon, or g")
    sub.add_parser("tongue", parents=[common], help="max-s map over (epsilon or g) x delta2")
    sub.add_parser("check", parents=[common], help="run the invariant suite")
    return parser


def _load_config(args) -> RunConfig:
    cfg = RunConfig()
    if args.config:
        cfg = parse_config(Path(args.config).read_text(encoding="utf-8"))
    if args.overrides:
        cfg = apply_overrides(cfg, args.overrides)
    if args.format:
        cfg = dataclasses.replace(cfg, format=args.format)
    if args.out:
        cfg = dataclasses.replace(cfg, output_path=args.out)
    return cfg


def _solve_state(cfg: RunConfig):
    lv = liouvillian(cfg.params)
    if cfg.solver == "evolve":
        rho = propagate(maximally_mixed(4), lv, cfg.dt, cfg.t_end)
    else:
        rho = steady_state(lv)
    return lv, rho


def _axis1_spec(cfg: RunConfig, defaults: dict, fallback: str) -> AxisSpec:
    name = cfg.axis1 if cfg.axis1 is not None else fallback
    if name not in defaults:
        raise UsageError(f"axis1 must be one of {tuple(defaults)}, got {name!r}")
    lo0, hi0, count0 = defaults[name]
    return AxisSpec(
        name=name,
        lo=cfg.axis1_min if cfg.axis1_min is not None else lo0,
        hi=cfg.axis1_max if cfg.axis1_max is not None else hi0,
        count=cfg.axis1_count if cfg.axis1_count is not None else count0,
    )


def _reject_axis2_overrides(cfg: RunConfig) -> None:
    if any(v is not None for v in (cfg.axis2_min, cfg.axis2_max, cfg.axis2_count)):
        raise UsageError("axis2 is the phi grid for this command; set n_phi instead")


def _cmd_steady(cfg: RunConfig, args) -> int:
    if args.heatmap:
        raise UsageError("--heatmap is not available for 'steady'")
    lv, rho = _solve_state(cfg)
    report = uniqueness_report(lv)
    data = emit_states(rho, partial_trace_A(rho), report, solver_residual(lv, rho), cfg.format)
    write_output(data, cfg.output_path)
    return 0


def _cmd_qfunc(cfg: RunConfig, args) -> int:
    _, rho = _solve_state(cfg)
    grid = q_grid(partial_trace_A(rho), cfg.n_theta, cfg.n_phi)
    write_output(emit_qgrid(grid, cfg.format), cfg.output_path)
    if args.heatmap:
        render_heatmap(grid.values, args.heatmap)
    return 0


def _cmd_sdist(cfg: RunConfig, args) -> int:
    _, rho = _solve_state(cfg)
    dist = s_distribution(partial_trace_A(rho), cfg.n_phi, cfg.n_theta, cfg.baseline)
    write_output(emit_sdist(dist, cfg.format), cfg.output_path)
    if args.heatmap:
        render_heatmap(dist.s_values.reshape(1, -1), args.heatmap)
    return 0


def _cmd_sweep(cfg: RunConfig, args) -> int:
    _reject_axis2_overrides(cfg)
    spec = SweepSpec(
        base=cfg.params,
        axis1=_axis1_spec(cfg, SWEEP_AXIS_DEFAULTS, "delta2"),
        axis2=phi_axis(cfg.n_phi),
        reduce="s_of_phi",
        n_theta=cfg.n_theta,
        n_phi=cfg.n_phi,
        baseline=cfg.baseline,
    )
    result = run_sweep(spec, jobs=args.jobs)
    write_output(emit_sweep(result, cfg.format), cfg.output_path)
    if args.heatmap:
        render_heatmap(result.values, args.heatmap)
    return 0


def _cmd_tongue(cfg: RunConfig, args) -> int:
    lo0, hi0, count0 = TONGUE_AXIS2_DEFAULT
    axis2 = AxisSpec(
        name="delta2",
        lo=cfg.axis2_min if cfg.axis2_min is not None else lo0,
        hi=cfg.axis2_max if cfg.axis2_max is not None else hi0,
        count=cfg.axis2_count if cfg.axis2_count is not None else count0,
    )
    spec = SweepSpec(
        base=cfg.params,
        axis1=_axis1_spec(cfg, TONGUE_AXIS_DEFAULTS, "epsilon"),
        axis2=axis2,
        reduce="max_s",
        n_theta=cfg.n_theta,
        n_phi=cfg.n_phi,
        baseline=cfg.baseline,
    )
    result = arnold_tongue(spec, jobs=args.jobs)
    write_output(emit_sweep(result, cfg.format), cfg.output_path)
    if args.heatmap:
        render_heatmap(result.values, args.heatmap)
    return 0


def _cmd_check(cfg: RunConfig, args) -> int:
    if args.heatmap:
        raise UsageError("--heatmap is not available for 'check'")
    lines = []

    def sink(msg: str) -> None:
        lines.append(msg)
        print(msg)

    ok = run_checks(cfg, out=sink)
    if cfg.output_path:
        Path(cfg.output_path).write_bytes(("\n".join(lines) + "\n").encode("ascii"))
    return 0 if ok else 2


_HANDLERS = {
    "steady": _cmd_steady,
    "qfunc": _cmd_qfunc,
    "sdist": _cmd_sdist,
    "sweep": _cmd_sweep,
    "tongue": _cmd_tongue,
    "check": _cmd_check,
}


def cli_main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    try:
        if args.jobs < 1:
            raise UsageError("--jobs must be >= 1")
        cfg = _load_config(args)
        return _HANDLERS[args.command](cfg, args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except _NUMERICAL_ERRORS as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(cli_main())
