"""Sweep configuration: YAML documents, command-line overrides, validation.

Schema (every key optional; flags override file values)::

    mode: decay-sweep            # xi-map | decay-sweep | oracle-check | scatter-demo | validate
    mirror:
      r_a: 0.6                   # one (r_a, r_b) pair ...
      r_b: 0.8
      pairs: [[0.6, 0.8]]        # ... or several
      xi: [0.75, 1.5]            # ... or the mirror parameter directly
      t_a: 0.8                   # validate only: override the derived transmissions
      t_b: 0.6
      phases: [pi, 0, 0, 0]
    mu: [0.0, 1.0]
    grid:
      kx_start: 0.0
      kx_stop: 10.0
      kx_count: 201
      spacing: linear            # linear | log
      resolution: 101            # xi-map
    quadrature: {nodes: 128, tol: 1.0e-10, max_nodes: 32768}
    tolerance: 1.0e-8
    force: false
    output: {path: out.csv, format: csv}
    scenario:                    # scatter-demo
      grid: {n: 2048, half_width: 40.0}
      speed: 1.0
      t_final: 20.0
      packets:
        - {side: a, center: 10.0, width: 1.0, carrier: 5.0, energy: 1.0, t_emit: 0.0}
      snapshot_times: [0.0, 10.0, 20.0]
      snapshot_dir: snapshots
"""
from __future__ import annotations

import copy
import math
import re
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Any, Optional

import numpy as np
import yaml

from .errors import ConfigError
from .mirror import xi_from_reflectances

MODES = ("xi-map", "decay-sweep", "oracle-check", "scatter-demo", "validate")
FORMATS = ("csv", "json")

_PI_RE = re.compile(r"^([+-]?(?:\d+\.?\d*|\.\d+)?)\s*\*?\s*pi(?:\s*/\s*(\d+\.?\d*))?$")


def parse_angle(value: Any) -> float:
    """Accept plain numbers and strings like ``pi``, ``-pi/2``, ``0.5pi``, ``3*pi``."""
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return float(value)
    text = str(value).strip().lower()
    m = _PI_RE.match(text)
    if m:
        coef = m.group(1)
        if coef in ("", "+"):
            c = 1.0
        elif coef == "-":
            c = -1.0
        else:
            c = float(coef)
        den = float(m.group(2)) if m.group(2) else 1.0
        return c * math.pi / den
    try:
        return float(text)
    except ValueError:
        raise ConfigError(f"cannot parse angle {value!r}") from None


def default_scenario() -> dict:
    """Two equal Gaussian packets meeting at the mirror at t = 10."""
    return {
        "grid": {"n": 2048, "half_width": 40.0},
        "speed": 1.0,
        "t_final": 20.0,
        "packets": [
            {"side": "a", "center": 10.0, "width": 1.0, "carrier": 5.0, "energy": 1.0, "t_emit": 0.0},
            {"side": "b", "center": -10.0, "width": 1.0, "carrier": 5.0, "energy": 1.0, "t_emit": 0.0},
        ],
        "snapshot_times": [],
        "snapshot_dir": None,
    }


_MODE_DEFAULTS = {
    "decay-sweep": dict(kx_start=0.0, kx_stop=10.0, kx_count=201, spacing="linear"),
    "oracle-check": dict(kx_start=0.05, kx_stop=25.0, kx_count=40, spacing="log",
                         mu=[0.0, 0.5, 1.0]),
}


@dataclass
class SweepConfig:
    mode: str = "decay-sweep"
    r_a: Optional[float] = None
    r_b: Optional[float] = None
    pairs: Optional[list] = None
    xi: Optional[list] = None
    t_a: Optional[float] = None
    t_b: Optional[float] = None
    phases: Optional[list] = None
    mu: list = field(default_factory=lambda: [0.0, 1.0])
    kx_start: float = 0.0
    kx_stop: float = 10.0
    kx_count: int = 201
    spacing: str = "linear"
    resolution: int = 101
    nodes: int = 128
    quad_tol: float = 1e-10
    quad_max_nodes: int = 1 << 15
    tolerance: float = 1e-8
    force: bool = False
    out: Optional[str] = None
    format: str = "csv"
    scenario: dict = field(default_factory=default_scenario)

    # -- derived views -------------------------------------------------

    def mirror_pairs(self) -> list[tuple[float, float]]:
        if self.pairs:
            return [(float(a), float(b)) for a, b in self.pairs]
        if self.r_a is not None or self.r_b is not None:
            if self.r_a is None or self.r_b is None:
                raise ConfigError("both r_a and r_b are required")
            return [(float(self.r_a), float(self.r_b))]
        return []

    def xi_values(self) -> list[float]:
        if self.xi is not None:
            return [float(v) for v in self.xi]
        pairs = self.mirror_pairs()
        if pairs:
            return [xi_from_reflectances(a, b) for a, b in pairs]
        return [0.75, 1.5]

    def phase_values(self) -> Optional[tuple[float, ...]]:
        if self.phases is None:
            return None
        if len(self.phases) != 4:
            raise ConfigError(f"phases needs 4 entries, got {len(self.phases)}")
        return tuple(parse_angle(p) for p in self.phases)

    def kx_grid(self):
        if self.spacing == "log":
            return np.geomspace(self.kx_start, self.kx_stop, self.kx_count)
        return np.linspace(self.kx_start, self.kx_stop, self.kx_count)

    # -- checks ----------------------------------------------------------

    def validate(self) -> None:
        if self.mode not in MODES:
            raise ConfigError(f"unknown mode {self.mode!r}; expected one of {', '.join(MODES)}")
        if self.format not in FORMATS:
            raise ConfigError(f"unknown format {self.format!r}")
        if self.mode in ("decay-sweep", "oracle-check"):
            if self.kx_count < 2:
                raise ConfigError("grid count must be >= 2")
            if not (self.kx_stop > self.kx_start >= 0):
                raise ConfigError("grid needs stop > start >= 0")
            if self.spacing not in ("linear", "log"):
                raise ConfigError(f"unknown spacing {self.spacing!r}")
            if self.spacing == "log" and self.kx_start <= 0:
                raise ConfigError("log spacing needs start > 0")
            for v in self.xi_values():
                if not 0.0 <= v <= 1.5:
                    raise ConfigError(f"xi={v!r} outside [0, 1.5]")
            for m in self.mu:
                if not 0.0 <= float(m) <= 1.0:
                    raise ConfigError(f"mu={m!r} outside [0, 1]")
        if self.mode == "xi-map" and self.resolution < 2:
            raise ConfigError("resolution must be >= 2")
        if self.nodes < 1:
            raise ConfigError("quadrature nodes must be positive")
        self.phase_values()

    # -- (de)serialisation -----------------------------------------------

    def to_dict(self) -> dict:
        d = asdict(self)
        mirror = {k: d.pop(k) for k in ("r_a", "r_b", "pairs", "xi", "t_a", "t_b", "phases")}
        grid = {k: d.pop(k) for k in ("kx_start", "kx_stop", "kx_count", "spacing", "resolution")}
        quad = {"nodes": d.pop("nodes"), "tol": d.pop("quad_tol"), "max_nodes": d.pop("quad_max_nodes")}
        output = {"path": d.pop("out"), "format": d.pop("format")}
        return {
            "mode": d["mode"],
            "mirror": {k: v for k, v in mirror.items() if v is not None},
            "mu": d["mu"],
            "grid": grid,
            "quadrature": quad,
            "tolerance": d["tolerance"],
            "force": d["force"],
            "output": output,
            "scenario": d["scenario"],
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "SweepConfig":
        if not isinstance(doc, dict):
            raise ConfigError("config document must be a mapping")
        known = {"mode", "mirror", "mu", "grid", "quadrature", "tolerance", "force", "output", "scenario"}
        unknown = set(doc) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        mode = doc.get("mode", "decay-sweep")
        kw: dict[str, Any] = {"mode": mode}
        kw.update(_MODE_DEFAULTS.get(mode, {}))
        kw.update(_section(doc, "mirror", {"r_a", "r_b", "pairs", "xi", "t_a", "t_b", "phases"}))
        kw.update(_section(doc, "grid", {"kx_start", "kx_stop", "kx_count", "spacing", "resolution"}))
        quad = _section(doc, "quadrature", {"nodes", "tol", "max_nodes"})
        for key, attr in (("nodes", "nodes"), ("tol", "quad_tol"), ("max_nodes", "quad_max_nodes")):
            if key in quad:
                kw[attr] = quad[key]
        out = _section(doc, "output", {"path", "format"})
        if "path" in out:
            kw["out"] = out["path"]
        if "format" in out:
            kw["format"] = out["format"]
        for key in ("mu", "tolerance", "force"):
            if key in doc:
                kw[key] = doc[key]
        if "scenario" in doc:
            scen = default_scenario()
            scen.update(copy.deepcopy(doc["scenario"] or {}))
            kw["scenario"] = scen
        try:
            cfg = cls(**kw)
            _coerce(cfg)
        except (TypeError, ValueError) as exc:
            raise ConfigError(str(exc)) from None
        return cfg

    def dumps(self) -> str:
        return yaml.safe_dump(self.to_dict(), sort_keys=False)


def _section(doc: dict, name: str, allowed: set) -> dict:
    sec = doc.get(name) or {}
    if not isinstance(sec, dict):
        raise ConfigError(f"section {name!r} must be a mapping")
    extra = set(sec) - allowed
    if extra:
        raise ConfigError(f"unknown keys in {name!r}: {sorted(extra)}")
    return dict(sec)


def _coerce(cfg: SweepConfig) -> None:
    for f in fields(cfg):
        v = getattr(cfg, f.name)
        if v is None:
            continue
        if f.name in ("kx_start", "kx_stop", "tolerance", "quad_tol", "r_a", "r_b", "t_a", "t_b"):
            setattr(cfg, f.name, float(v))
        elif f.name in ("kx_count", "resolution", "nodes", "quad_max_nodes"):
            setattr(cfg, f.name, int(v))
        elif f.name == "mu":
            setattr(cfg, f.name, [float(m) for m in v])
        elif f.name == "xi":
            setattr(cfg, f.name, [float(m) for m in v])


def load_config(path: str | Path) -> SweepConfig:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    try:
        doc = yaml.safe_load(text) or {}
    except yaml.YAMLError as exc:
        raise ConfigError(f"cannot parse config {path}: {exc}") from None
    return SweepConfig.from_dict(doc)
