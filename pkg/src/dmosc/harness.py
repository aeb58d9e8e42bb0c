"""Experiment configuration, time series generation and parameter sweeps."""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path

import numpy as np

from .dynamics import evolve_exact_many, evolve_rk4, plan
from .fockstate import excitation_expectation, initial_state, total_norm
from .model import ModelParams, SectorPolicy
from .observables import concurrence, entropy, g2, inversion, isospin_density, pair_density

__all__ = [
    "COLUMNS",
    "ConfigError",
    "ExperimentConfig",
    "SweepSpec",
    "time_grid",
    "compute_series",
    "format_series",
    "read_series",
    "run",
    "sweep",
    "parse_sweep",
]

COLUMNS = ("tau", "S", "C", "W", "g2", "norm", "excitation")
OBSERVABLES = COLUMNS[1:]
SWEEP_PARAMS = ("lambda1", "lambda2", "omega", "alpha")


class ConfigError(ValueError):
    """Invalid experiment configuration; ``field`` names the culprit."""

    def __init__(self, field_name, message):
        super().__init__(f"{field_name}: {message}")
        self.field = field_name


@dataclass(frozen=True)
class ExperimentConfig:
    lambda1: float = 0.3
    lambda2: float = 0.3
    omega: float = 0.2
    alpha: float = 3.0
    n_max: int | None = None
    sectors: str = "full"
    solver: str = "exact"
    dt: float = 1e-3
    tmax: float = 100.0
    dtau_out: float = 0.05
    observables: tuple[str, ...] = OBSERVABLES
    out_dir: str = "out"
    format: str = "csv"
    plot: bool = False

    def __post_init__(self):
        obs = self.observables
        if isinstance(obs, str):
            obs = tuple(x.strip() for x in obs.split(",") if x.strip())
        object.__setattr__(self, "observables", tuple(obs))
        for name in ("tmax", "dtau_out", "dt"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
                raise ConfigError(name, f"must be a positive number, got {v!r}")
        if self.solver not in ("exact", "rk4"):
            raise ConfigError("solver", f"must be 'exact' or 'rk4', got {self.solver!r}")
        if self.format not in ("csv", "json"):
            raise ConfigError("format", f"must be 'csv' or 'json', got {self.format!r}")
        if self.sectors not in ("full", "paper"):
            raise ConfigError("sectors", f"must be 'full' or 'paper', got {self.sectors!r}")
        if not self.observables:
            raise ConfigError("observables", "selection is empty")
        unknown = [o for o in self.observables if o not in OBSERVABLES]
        if unknown:
            raise ConfigError("observables", f"unknown {unknown}; choose from {list(OBSERVABLES)}")
        if len(set(self.observables)) != len(self.observables):
            raise ConfigError("observables", "duplicate entries")
        try:
            self.model_params()
        except ValueError as exc:
            raise ConfigError(_guess_field(str(exc)), str(exc)) from exc

    def model_params(self) -> ModelParams:
        return ModelParams(lambda1=self.lambda1, lambda2=self.lambda2, omega=self.omega,
                           alpha=self.alpha, n_max=self.n_max,
                           sector_policy=SectorPolicy(self.sectors))

    @property
    def columns(self) -> tuple[str, ...]:
        return ("tau",) + tuple(c for c in OBSERVABLES if c in self.observables)

    def params_dict(self) -> dict:
        d = asdict(self)
        d["observables"] = list(self.observables)
        d["n_max"] = self.model_params().n_max
        for k in ("out_dir", "plot", "format"):
            d.pop(k)
        return d

    @classmethod
    def from_mapping(cls, data: dict, **overrides) -> "ExperimentConfig":
        """Build from a flat mapping; ``overrides`` that are not None win."""
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ConfigError(unknown[0], "unknown configuration field")
        merged = dict(data)
        merged.update({k: v for k, v in overrides.items() if v is not None})
        try:
            return cls(**merged)
        except TypeError as exc:
            raise ConfigError("config", str(exc)) from exc

    @classmethod
    def from_file(cls, path, **overrides) -> "ExperimentConfig":
        with open(path) as fh:
            data = json.load(fh)
        if not isinstance(data, dict):
            raise ConfigError("config", "config file must hold a flat JSON object")
        return cls.from_mapping(data, **overrides)


def _guess_field(msg):
    for name in ("lambda1", "lambda2", "omega", "alpha", "n_max"):
        if name in msg:
            return name
    return "model"


def time_grid(tmax: float, dtau_out: float) -> np.ndarray:
    """``k * dtau_out`` for every ``k`` with ``k * dtau_out <= tmax``."""
    count = int(math.floor(tmax / dtau_out + 1e-9)) + 1
    return np.arange(count) * dtau_out


def _states(config: ExperimentConfig, taus):
    mp = config.model_params()
    s0 = initial_state(mp)
    if config.solver == "exact":
        return evolve_exact_many(s0, plan(mp, taus), taus)
    out = [s0]
    s = s0
    for t0, t1 in zip(taus[:-1], taus[1:]):
        s = evolve_rk4(s, mp, t1 - t0, config.dt)
        # keep the nominal grid time, not the accumulated float sum
        s = s.with_amplitudes(s.amplitudes, float(t1))
        out.append(s)
    return out


def compute_series(config: ExperimentConfig) -> np.ndarray:
    """Rows of ``config.columns`` over the output time grid."""
    taus = time_grid(config.tmax, config.dtau_out)
    want = set(config.observables)
    rows = []
    for s in _states(config, taus):
        row = [s.tau]
        if "S" in want or "W" in want:
            iso = isospin_density(s)
        if "S" in want:
            row.append(entropy(iso))
        if "C" in want:
            row.append(concurrence(pair_density(s)))
        if "W" in want:
            row.append(inversion(iso))
        if "g2" in want:
            row.append(g2(s))
        if "norm" in want:
            row.append(total_norm(s))
        if "excitation" in want:
            row.append(excitation_expectation(s))
        rows.append(row)
    return np.array(rows, dtype=float)


def _num(x):
    return format(float(x), ".17g")


def format_series(columns, rows, fmt="csv", params=None) -> str:
    if fmt == "csv":
        lines = [",".join(columns)]
        lines.extend(",".join(_num(x) for x in row) for row in rows)
        return "\n".join(lines) + "\n"
    body = ",\n".join("    [" + ", ".join(_num(x) for x in row) + "]" for row in rows)
    return ("{\n"
            f'  "columns": {json.dumps(list(columns))},\n'
            f'  "params": {json.dumps(params or {}, sort_keys=True)},\n'
            '  "rows": [\n' + body + "\n  ]\n}\n")


def read_series(path) -> tuple[list[str], np.ndarray, dict]:
    """Load a CSV or JSON series file; returns ``(columns, rows, params)``."""
    path = Path(path)
    text = path.read_text()
    if path.suffix == ".json":
        try:
            data = json.loads(text)
            columns = list(data["columns"])
            rows = np.array(data["rows"], dtype=float).reshape(-1, len(columns))
        except (ValueError, KeyError, TypeError) as exc:
            raise ValueError(f"malformed series file {path}: {exc}") from exc
        return columns, rows, dict(data.get("params", {}))
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError(f"malformed series file {path}: empty")
    columns = lines[0].split(",")
    try:
        rows = np.array([[float(x) for x in ln.split(",")] for ln in lines[1:]], dtype=float)
    except ValueError as exc:
        raise ValueError(f"malformed series file {path}: {exc}") from exc
    rows = rows.reshape(-1, len(columns))
    if rows.size and rows.shape[1] != len(columns):
        raise ValueError(f"malformed series file {path}: ragged rows")
    params = {}
    sidecar = path.with_suffix(".params.json")
    if sidecar.exists():
        params = json.loads(sidecar.read_text())
    return columns, rows, params


def _write(path: Path, text: str):
    with open(path, "w", newline="\n") as fh:
        fh.write(text)


def run(config: ExperimentConfig, stem: str = "series") -> list[Path]:
    """Compute one series and write it (plus plots) under ``config.out_dir``.

    Returns the written files, series first.
    """
    rows = compute_series(config)
    out = Path(config.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    params = config.params_dict()
    series = out / f"{stem}.{config.format}"
    written = [series]
    _write(series, format_series(config.columns, rows, config.format, params))
    if config.format == "csv":
        sidecar = out / f"{stem}.params.json"
        _write(sidecar, json.dumps(params, sort_keys=True, indent=2) + "\n")
        written.append(sidecar)
    if config.plot:
        from .svg import render

        for name in config.columns[1:]:
            written.append(render(series, name, out / f"{stem}_{name}.svg"))
    return written


@dataclass(frozen=True)
class SweepSpec:
    parameter: str
    values: tuple[float, ...]
    base: ExperimentConfig = field(default_factory=ExperimentConfig)

    def __post_init__(self):
        if self.parameter not in SWEEP_PARAMS:
            raise ConfigError("sweep", f"parameter must be one of {SWEEP_PARAMS}, got {self.parameter!r}")
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        if not self.values:
            raise ConfigError("sweep", "no sweep values")
        for v in self.values:
            self.config_for(v)

    def config_for(self, value: float) -> ExperimentConfig:
        try:
            return replace(self.base, **{self.parameter: value})
        except ConfigError:
            raise
        except ValueError as exc:
            raise ConfigError(self.parameter, str(exc)) from exc


def parse_sweep(text: str) -> tuple[str, tuple[float, ...]]:
    """Parse ``param=start:stop:count`` or ``param=v1,v2,...``."""
    if "=" not in text:
        raise ConfigError("sweep", f"expected <param>=<values>, got {text!r}")
    name, spec = text.split("=", 1)
    name = name.strip()
    try:
        if ":" in spec:
            start, stop, count = spec.split(":")
            count = int(count)
            if count < 1:
                raise ValueError("count must be >= 1")
            values = tuple(float(v) for v in np.linspace(float(start), float(stop), count))
        else:
            values = tuple(float(v) for v in spec.split(",") if v.strip())
    except ValueError as exc:
        raise ConfigError("sweep", f"bad value list {spec!r}: {exc}") from exc
    return name, values


def _value_tag(value: float) -> str:
    return repr(float(value))


def sweep(spec: SweepSpec) -> Path:
    """Run every sweep value; writes one series per value and a manifest.

    Returns the manifest path.
    """
    out = Path(spec.base.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    entries = []
    seen = set()
    for value in spec.values:
        cfg = spec.config_for(value)
        stem = f"{spec.parameter}_{_value_tag(value)}"
        if stem in seen:
            raise ConfigError("sweep", f"duplicate sweep value {value}")
        seen.add(stem)
        files = run(cfg, stem=stem)
        columns, rows, _ = read_series(files[0])
        entries.append({
            "value": value,
            "series": files[0].name,
            "files": [f.name for f in files],
            "summary": _summary(columns, rows),
        })
    manifest = {
        "parameter": spec.parameter,
        "base": spec.base.params_dict(),
        "entries": entries,
    }
    path = out / "manifest.json"
    _write(path, json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return path


def _summary(columns, rows):
    col = {c: i for i, c in enumerate(columns)}
    s = {}
    if "S" in col:
        s["mean_S"] = float(np.mean(rows[:, col["S"]]))
    if "g2" in col:
        s["mean_g2"] = float(np.mean(rows[:, col["g2"]]))
    if "C" in col:
        s["max_C"] = float(np.max(rows[:, col["C"]]))
    return s


def write_config(config: ExperimentConfig, path) -> None:
    d = asdict(config)
    d["observables"] = list(config.observables)
    _write(Path(path), json.dumps(d, indent=2, sort_keys=True) + "\n")

