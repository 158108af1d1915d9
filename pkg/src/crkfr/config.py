"""Run configuration: flat key = value text with # comments."""

from dataclasses import dataclass, fields
from typing import Optional

from .models.base import FluxKinds
from .problems import PROBLEM_NAMES

_TABLEAUS = ("rk4", "ssprk33")
_STEPPERS = ("rkfr", "crkfr")

_REQUIRED = ("problem", "nx", "degree", "t_final")


@dataclass
class RunConfig:
    problem: str
    nx: int
    degree: int
    t_final: float
    ny: Optional[int] = None  # defaults to nx for 2D problems
    gamma: float = 1.4
    g_grav: float = 9.812
    tableau: str = "rk4"
    stepper: str = "crkfr"
    volume_flux: str = "central"
    surface_flux: str = "rusanov"
    noncons_interface: str = "reduced"
    cfl: float = 0.5
    dt_max: float = 1.0
    diagnostics_interval: Optional[int] = None  # default 1 in 1D, 10 in 2D
    snapshot_interval: float = 0.0  # 0: initial and final snapshots only
    output_dir: str = "out"
    seed: int = 0  # reserved, not consumed by any current code path

    def validate(self):
        if self.problem not in PROBLEM_NAMES:
            raise ValueError(
                f"unknown problem '{self.problem}' (choose from {', '.join(PROBLEM_NAMES)})"
            )
        if self.nx < 1:
            raise ValueError("nx must be >= 1")
        if self.ny is not None and self.ny < 1:
            raise ValueError("ny must be >= 1")
        if self.degree < 0:
            raise ValueError(f"degree must be >= 0, got {self.degree}")
        if self.t_final < 0.0:
            raise ValueError("t_final must be >= 0")
        if self.cfl <= 0.0:
            raise ValueError("cfl must be positive")
        if self.dt_max <= 0.0:
            raise ValueError("dt_max must be positive")
        if self.tableau not in _TABLEAUS:
            raise ValueError(f"unknown tableau '{self.tableau}' (choose from {', '.join(_TABLEAUS)})")
        if self.stepper not in _STEPPERS:
            raise ValueError(f"unknown stepper '{self.stepper}' (choose from {', '.join(_STEPPERS)})")
        if self.diagnostics_interval is not None and self.diagnostics_interval < 1:
            raise ValueError("diagnostics_interval must be >= 1")
        if self.snapshot_interval < 0.0:
            raise ValueError("snapshot_interval must be >= 0")
        # reuses the flux-kind enum validation (volume/surface/noncons)
        FluxKinds(self.volume_flux, self.surface_flux, self.noncons_interface)
        return self

    def resolved_items(self):
        """All fields in declaration order, with defaults filled in, for
        the provenance record."""
        out = []
        for f in fields(self):
            value = getattr(self, f.name)
            if f.name == "ny" and value is None:
                value = self.nx
            if f.name == "diagnostics_interval" and value is None:
                from .problems import build_problem

                ndim = build_problem(self.problem, self.nx).mesh.ndim
                value = 1 if ndim == 1 else 10
            out.append((f.name, value))
        return out


_TYPES = {f.name: f.type for f in fields(RunConfig)}
_INT_KEYS = {"nx", "ny", "degree", "diagnostics_interval", "seed"}
_FLOAT_KEYS = {"t_final", "gamma", "g_grav", "cfl", "dt_max", "snapshot_interval"}


def _coerce(key: str, raw: str):
    try:
        if key in _INT_KEYS:
            return int(raw)
        if key in _FLOAT_KEYS:
            return float(raw)
    except ValueError:
        raise ValueError(f"config key '{key}': cannot parse '{raw}'") from None
    return raw


def parse_pairs(text: str) -> dict:
    """Parse 'key = value' lines; # starts a comment, blanks ignored."""
    pairs = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ValueError(f"config line {lineno}: expected 'key = value', got '{stripped}'")
        key, _, value = stripped.partition("=")
        key = key.strip()
        value = value.strip()
        if not key or not value:
            raise ValueError(f"config line {lineno}: expected 'key = value', got '{stripped}'")
        if key in pairs:
            raise ValueError(f"config line {lineno}: duplicate key '{key}'")
        pairs[key] = value
    return pairs


def parse_config(text: str, overrides: Optional[dict] = None) -> RunConfig:
    """Build a validated RunConfig from config text plus optional
    'key=value' overrides (e.g. from the command line)."""
    pairs = parse_pairs(text)
    if overrides:
        pairs.update(overrides)
    known = set(_TYPES)
    for key in pairs:
        if key not in known:
            raise ValueError(f"unknown config key '{key}'")
    missing = [k for k in _REQUIRED if k not in pairs]
    if missing:
        raise ValueError(f"missing required config keys: {', '.join(missing)}")
    kwargs = {k: _coerce(k, v) for k, v in pairs.items()}
    return RunConfig(**kwargs).validate()


def parse_config_file(path, overrides: Optional[dict] = None) -> RunConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config(fh.read(), overrides)
