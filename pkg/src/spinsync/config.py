"""Flat `key = value` run configuration shared by the config file and --set.

Unknown keys are errors; omitted keys fall back to the defaults below (the
resonant strong-coupling operating point: epsilon=5, g=8, every gain/loss
ratio 10, zero detuning). `#` starts a comment anywhere on a line.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

from .errors import ConfigParseError, InvalidValueError, UnknownKeyError
from .model import SystemParams

SOLVERS = ("null", "evolve")
FORMATS = ("csv", "json")
_BASELINES = ("centered", "paper")
_AXIS1 = ("delta2", "epsilon", "g")

_PARAM_FLOAT_KEYS = (
    "delta1",
    "delta2",
    "epsilon",
    "g",
    "gamma_a_gain",
    "gamma_a_loss",
    "gamma_b_gain",
    "gamma_b_loss",
    "omega_a",
    "omega_b",
    "omega",
)
_FLOAT_KEYS = _PARAM_FLOAT_KEYS + ("dt", "t_end", "axis1_min", "axis1_max", "axis2_min", "axis2_max")
_INT_KEYS = ("n_theta", "n_phi", "axis1_count", "axis2_count")
_ENUM_KEYS = {
    "solver": SOLVERS,
    "baseline": _BASELINES,
    "format": FORMATS,
    "axis1": _AXIS1,
}
_STRING_KEYS = ("output_path",)

KNOWN_KEYS = frozenset(_FLOAT_KEYS + _INT_KEYS + tuple(_ENUM_KEYS) + _STRING_KEYS)


@dataclass(frozen=True)
class RunConfig:
    """One run's parameters, solver choice, resolutions, and output routing.

    The axis1/axis2 fields configure the sweep subcommands; left at None
    they take per-axis defaults chosen by the command (see cli module).
    """

    params: SystemParams = SystemParams()
    solver: str = "null"
    dt: float = 1e-3
    t_end: float = 50.0
    n_theta: int = 181
    n_phi: int = 360
    baseline: str = "centered"
    output_path: str = ""
    format: str = "csv"
    axis1: str | None = None
    axis1_min: float | None = None
    axis1_max: float | None = None
    axis1_count: int | None = None
    axis2_min: float | None = None
    axis2_max: float | None = None
    axis2_count: int | None = None


def _convert(line_no: int, key: str, raw: str):
    if key in _FLOAT_KEYS:
        try:
            value = float(raw)
        except ValueError:
            raise InvalidValueError(line_no, key, f"not a number: {raw!r}") from None
        if key.startswith("gamma_") and value < 0:
            raise InvalidValueError(line_no, key, "rates must be >= 0")
        if key == "gamma_b_loss" and value <= 0:
            raise InvalidValueError(line_no, key, "the unit rate must be > 0")
        if key == "epsilon" and value < 0:
            raise InvalidValueError(line_no, key, "drive strength must be >= 0")
        if key == "dt" and value <= 0:
            raise InvalidValueError(line_no, key, "step must be > 0")
        if key == "t_end" and value <= 0:
            raise InvalidValueError(line_no, key, "horizon must be > 0")
        return value
    if key in _INT_KEYS:
        try:
            value = int(raw)
        except ValueError:
            raise InvalidValueError(line_no, key, f"not an integer: {raw!r}") from None
        if key == "n_theta" and (value % 2 == 0 or value < 3):
            raise InvalidValueError(line_no, key, "must be odd and >= 3")
        if key == "n_phi" and value < 4:
            raise InvalidValueError(line_no, key, "must be >= 4")
        if key.endswith("_count") and value < 2:
            raise InvalidValueError(line_no, key, "must be >= 2")
        return value
    if key in _ENUM_KEYS:
        if raw not in _ENUM_KEYS[key]:
            raise InvalidValueError(line_no, key, f"must be one of {_ENUM_KEYS[key]}")
        return raw
    return raw  # plain string key


def _scan(text: str, first_line: int = 1):
    """Yield (line_no, key, raw_value) for every assignment in the text."""
    for offset, line in enumerate(text.splitlines()):
        line_no = first_line + offset
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        if "=" not in body:
            raise ConfigParseError(line_no, f"expected 'key = value', got {body!r}")
        key, raw = body.split("=", 1)
        key = key.strip()
        raw = raw.strip()
        if not key:
            raise ConfigParseError(line_no, "empty key")
        if key not in KNOWN_KEYS:
            raise UnknownKeyError(line_no, key)
        yield line_no, key, raw


def _build(assignments) -> RunConfig:
    fields = {}
    lines = {}
    for line_no, key, raw in assignments:
        fields[key] = _convert(line_no, key, raw)
        lines[key] = line_no
    param_kwargs = {k: fields.pop(k) for k in _PARAM_FLOAT_KEYS if k in fields}
    try:
        params = SystemParams(**param_kwargs)
    except ValueError as exc:
        # Cross-field failure (e.g. detuning/frequency inconsistency):
        # attribute it to the implicated assignment when one is named.
        msg = str(exc)
        key = next((k for k in param_kwargs if k in msg), next(iter(param_kwargs), "delta1"))
        raise InvalidValueError(lines.get(key, 0), key, msg) from exc
    cfg = RunConfig(params=params, **fields)
    if cfg.t_end < cfg.dt:
        raise InvalidValueError(lines.get("t_end", 0), "t_end", "must be >= dt")
    for axis in ("axis1", "axis2"):
        lo, hi = getattr(cfg, f"{axis}_min"), getattr(cfg, f"{axis}_max")
        if lo is not None and hi is not None and not lo < hi:
            raise InvalidValueError(
                lines.get(f"{axis}_max", 0), f"{axis}_max", "axis needs min < max"
            )
    return cfg


def parse_config(text: str) -> RunConfig:
    """Parse config text into a RunConfig; later assignments win."""
    return _build(_scan(text))


def apply_overrides(cfg: RunConfig, pairs: list[str]) -> RunConfig:
    """Fold `key=value` override strings (e.g. from --set) onto a config."""
    assignments = list(_scan(emit_config(cfg)))
    for i, pair in enumerate(pairs, start=1):
        assignments.extend(_scan(pair, first_line=i))
    return _build(assignments)


def emit_config(cfg: RunConfig) -> str:
    """Render a config that parses back to an equal RunConfig.

    Floats use repr (shortest round-trip form); unset optional keys are
    omitted.
    """
    lines = []
    p = cfg.params
    for key in _PARAM_FLOAT_KEYS:
        value = getattr(p, key)
        if value is not None:
            lines.append(f"{key} = {value!r}")
    lines.append(f"solver = {cfg.solver}")
    lines.append(f"dt = {cfg.dt!r}")
    lines.append(f"t_end = {cfg.t_end!r}")
    lines.append(f"n_theta = {cfg.n_theta}")
    lines.append(f"n_phi = {cfg.n_phi}")
    lines.append(f"baseline = {cfg.baseline}")
    lines.append(f"format = {cfg.format}")
    if cfg.output_path:
        lines.append(f"output_path = {cfg.output_path}")
    if cfg.axis1 is not None:
        lines.append(f"axis1 = {cfg.axis1}")
    for key in ("axis1_min", "axis1_max", "axis2_min", "axis2_max"):
        value = getattr(cfg, key)
        if value is not None:
            lines.append(f"{key} = {value!r}")
    for key in ("axis1_count", "axis2_count"):
        value = getattr(cfg, key)
        if value is not None:
            lines.append(f"{key} = {value}")
    return "\n".join(lines) + "\n"


def replace_params(cfg: RunConfig, **kwargs) -> RunConfig:
    """Convenience: a copy of cfg with some physical parameters replaced."""
    return dataclasses.replace(cfg, params=dataclasses.replace(cfg.params, **kwargs))
