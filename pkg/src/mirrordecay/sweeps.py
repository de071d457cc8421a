"""Table producers behind the CLI subcommands.

Each ``run_*`` returns its columns and rows and, when given a sink path,
writes them through :mod:`mirrordecay.output`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from .config import SweepConfig
from .decay import relative_decay_rate
from .errors import ConfigError, QuadratureNotConverged, SideMismatch
from .mirror import MirrorSpec, build_mirror, validate_mirror, xi_from_reflectances, ValidationReport
from .oracle import QuadratureSettings, oracle_relative_decay
from .output import write_table
from .wavepacket import EnergyLedger, Grid, energy_audit, gaussian_packet, scatter

XI_MAP_COLUMNS = ("r_a", "r_b", "xi")
DECAY_COLUMNS = ("xi", "mu", "kx", "u", "ratio")
ORACLE_COLUMNS = ("u", "mu", "xi", "closed_form", "oracle", "abs_diff")
SNAPSHOT_COLUMNS = ("x", "re", "im", "intensity")
LEDGER_COLUMNS = ("input_a", "input_b", "output_a", "output_b", "mirror_balance", "relative_imbalance")
VALIDATE_COLUMNS = ("constraint", "passed", "residual")

_UNSET = object()


@dataclass
class Table:
    columns: tuple[str, ...]
    rows: list[tuple]

    def column(self, name: str) -> np.ndarray:
        j = self.columns.index(name)
        return np.array([r[j] for r in self.rows], dtype=float)


def _emit(table: Table, sink, fmt_name: str) -> Table:
    if sink is not _UNSET:
        write_table(table.columns, table.rows, sink, fmt_name)
    return table


def run_xi_map(resolution: int, sink=_UNSET, fmt_name: str = "csv") -> Table:
    """Mirror parameter over a ``resolution x resolution`` grid of the unit square."""
    if resolution < 2:
        raise ValueError("resolution must be >= 2")
    r = np.arange(resolution) / (resolution - 1)
    ra, rb = np.meshgrid(r, r, indexing="ij")
    xi = xi_from_reflectances(ra, rb)
    rows = [(float(a), float(b), float(x)) for a, b, x in zip(ra.ravel(), rb.ravel(), xi.ravel())]
    return _emit(Table(XI_MAP_COLUMNS, rows), sink, fmt_name)


def run_decay_sweep(config: SweepConfig, sink=_UNSET) -> Table:
    kx = config.kx_grid()
    u = 2.0 * kx
    rows = []
    for xi in config.xi_values():
        for mu in config.mu:
            ratio = np.atleast_1d(relative_decay_rate(u, mu, xi))
            rows.extend((xi, mu, float(k), float(uu), float(r)) for k, uu, r in zip(kx, u, ratio))
    return _emit(Table(DECAY_COLUMNS, rows), sink, config.format)


@dataclass
class OracleReport:
    table: Table
    tolerance: float

    @property
    def worst(self) -> float:
        d = self.table.column("abs_diff")
        return float(np.max(np.where(np.isnan(d), np.inf, d)))

    @property
    def passed(self) -> bool:
        return self.worst <= self.tolerance


def run_oracle_check(config: SweepConfig, sink=_UNSET) -> OracleReport:
    settings = QuadratureSettings(nodes=config.nodes, tol=config.quad_tol, max_nodes=config.quad_max_nodes)
    u_grid = 2.0 * config.kx_grid()
    rows = []
    for xi in config.xi_values():
        for mu in config.mu:
            closed = np.atleast_1d(relative_decay_rate(u_grid, mu, xi))
            for u, c in zip(u_grid, closed):
                try:
                    o = oracle_relative_decay(float(u), mu, xi, settings)
                except QuadratureNotConverged:
                    o = math.nan
                rows.append((float(u), mu, xi, float(c), o, abs(float(c) - o)))
    table = _emit(Table(ORACLE_COLUMNS, rows), sink, config.format)
    return OracleReport(table, config.tolerance)


def scenario_mirror(config: SweepConfig) -> MirrorSpec:
    """Mirror for the scatter demo; unchecked when ``config.force`` is set."""
    r_a = 1.0 / math.sqrt(2.0) if config.r_a is None else config.r_a
    r_b = 1.0 / math.sqrt(2.0) if config.r_b is None else config.r_b
    phases = config.phase_values()
    if config.force and phases is not None:
        spec = build_mirror(r_a, r_b)
        return MirrorSpec(spec.r_a, spec.r_b, spec.t_a, spec.t_b, *phases)
    return build_mirror(r_a, r_b, phases)


def config_mirror(config: SweepConfig) -> MirrorSpec:
    """Unchecked mirror assembled from the config, for ``validate``."""
    r_a = 1.0 / math.sqrt(2.0) if config.r_a is None else config.r_a
    r_b = 1.0 / math.sqrt(2.0) if config.r_b is None else config.r_b
    t_a = config.t_a if config.t_a is not None else math.sqrt(max(0.0, 1.0 - r_a * r_a))
    t_b = config.t_b if config.t_b is not None else math.sqrt(max(0.0, 1.0 - r_b * r_b))
    phases = config.phase_values()
    if phases is None:
        return MirrorSpec(r_a, r_b, t_a, t_b)
    return MirrorSpec(r_a, r_b, t_a, t_b, *phases)


def run_validate(config: SweepConfig, sink=_UNSET) -> ValidationReport:
    report = validate_mirror(config_mirror(config))
    rows = [(c.name, c.passed, c.residual) for c in report.checks]
    _emit(Table(VALIDATE_COLUMNS, rows), sink, config.format)
    return report


def scenario_packets(scenario: dict):
    try:
        return _scenario_packets(scenario)
    except SideMismatch:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"bad scenario: {exc!r}") from None


def _scenario_packets(scenario: dict):
    g = scenario["grid"]
    grid = Grid(int(g["n"]), float(g["half_width"]))
    speed = float(scenario.get("speed", 1.0))
    packets = {"a": None, "b": None}
    for p in scenario["packets"]:
        side = p["side"]
        if packets.get(side, 0) is not None:
            raise ValueError(f"at most one packet per side; bad or repeated side {side!r}")
        packets[side] = gaussian_packet(
            grid,
            side,
            center=float(p["center"]),
            width=float(p["width"]),
            carrier=float(p["carrier"]),
            energy=float(p.get("energy", 1.0)),
            t_emit=float(p.get("t_emit", 0.0)),
            speed=speed,
        )
    return packets["a"], packets["b"]


@dataclass
class ScatterDemoResult:
    ledger: EnergyLedger
    spec: MirrorSpec
    snapshots: dict


def run_scatter_demo(config: SweepConfig, sink=_UNSET) -> ScatterDemoResult:
    spec = scenario_mirror(config)
    scen = config.scenario
    pa, pb = scenario_packets(scen)
    ledger = energy_audit(pa, pb, spec, float(scen["t_final"]))
    row = tuple(ledger.as_dict()[c] for c in LEDGER_COLUMNS)
    _emit(Table(LEDGER_COLUMNS, [row]), sink, config.format)
    snapshots = {}
    snap_dir: Optional[str] = scen.get("snapshot_dir")
    for t in scen.get("snapshot_times") or []:
        state = scatter(pa, pb, spec, float(t))
        table = Table(SNAPSHOT_COLUMNS, list(state.rows()))
        snapshots[float(t)] = table
        if snap_dir:
            write_table(table.columns, table.rows, Path(snap_dir) / f"snapshot_t{float(t):g}.csv", "csv")
    return ScatterDemoResult(ledger, spec, snapshots)
