"""Command-line front end.

    mirrordecay xi-map        --resolution 101 --out xi.csv
    mirrordecay decay-sweep   --xi 0.75 1.5 --mu 0 1 --kx-stop 10 --out sweep.csv
    mirrordecay oracle-check  --tolerance 1e-8
    mirrordecay scatter-demo  --r-a 0.7071 --r-b 0.7071 --phases 0 0 0 0 --force
    mirrordecay validate      --r-a 0.5 --r-b 0.5 --phases 0 0 0 0

Exit status: 0 success, 1 validation or tolerance failure, 2 I/O or config error.
"""
from __future__ import annotations

import argparse
import logging
import sys
from typing import Optional, Sequence

from . import __version__
from .config import FORMATS, SweepConfig, load_config
from .errors import (
    ConfigError,
    GridOverrun,
    IoFailure,
    OutOfRange,
    PhaseConditionViolated,
    ScatteringIncomplete,
    SideMismatch,
)
from .mirror import validate_mirror
from .output import fmt
from .sweeps import (
    config_mirror,
    run_decay_sweep,
    run_oracle_check,
    run_scatter_demo,
    run_validate,
    run_xi_map,
)

log = logging.getLogger("mirrordecay")

EXIT_OK, EXIT_FAIL, EXIT_IO = 0, 1, 2


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="YAML (or JSON) config file")
    p.add_argument("--out", help="output file; stdout when omitted")
    p.add_argument("--format", choices=FORMATS)
    p.add_argument("--tolerance", type=float)
    p.add_argument("--force", action="store_true", default=None,
                   help="run even when the mirror fails validation")
    p.add_argument("-v", "--verbose", action="store_true")


def _mirror_flags(p: argparse.ArgumentParser, with_xi: bool = True) -> None:
    p.add_argument("--r-a", type=float, dest="r_a")
    p.add_argument("--r-b", type=float, dest="r_b")
    p.add_argument("--phases", nargs=4, metavar="PHI",
                   help="four phases in radians; 'pi', 'pi/2', '-pi' are accepted")
    if with_xi:
        p.add_argument("--xi", type=float, nargs="+")


def _grid_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--mu", type=float, nargs="+")
    p.add_argument("--kx-start", type=float, dest="kx_start")
    p.add_argument("--kx-stop", type=float, dest="kx_stop")
    p.add_argument("--kx-count", type=int, dest="kx_count")
    p.add_argument("--spacing", choices=("linear", "log"))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mirrordecay",
        description="Dipole decay rates near a two-sided semi-transparent mirror.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="mode", required=True)

    p = sub.add_parser("xi-map", help="mirror parameter over the (r_a, r_b) unit square")
    _common(p)
    p.add_argument("--resolution", type=int)

    p = sub.add_parser("decay-sweep", help="relative decay rate versus distance")
    _common(p)
    _mirror_flags(p)
    _grid_flags(p)

    p = sub.add_parser("oracle-check", help="closed form versus far-field quadrature")
    _common(p)
    _mirror_flags(p)
    _grid_flags(p)
    p.add_argument("--nodes", type=int)
    p.add_argument("--quad-tol", type=float, dest="quad_tol")
    p.add_argument("--max-nodes", type=int, dest="quad_max_nodes")

    p = sub.add_parser("scatter-demo", help="1D wave-packet scattering and energy audit")
    _common(p)
    _mirror_flags(p, with_xi=False)
    p.add_argument("--t-final", type=float, dest="t_final")
    p.add_argument("--snapshot-times", type=float, nargs="+", dest="snapshot_times")
    p.add_argument("--snapshot-dir", dest="snapshot_dir")

    p = sub.add_parser("validate", help="check mirror amplitudes and phases")
    _common(p)
    _mirror_flags(p, with_xi=False)
    p.add_argument("--t-a", type=float, dest="t_a")
    p.add_argument("--t-b", type=float, dest="t_b")
    return parser


_PLAIN_OVERRIDES = (
    "r_a", "r_b", "t_a", "t_b", "phases", "xi", "mu", "kx_start", "kx_stop", "kx_count",
    "spacing", "resolution", "nodes", "quad_tol", "quad_max_nodes", "tolerance", "force", "out", "format",
)


def resolve_config(args: argparse.Namespace) -> SweepConfig:
    """File values first, then any flag that was actually given."""
    if args.config:
        cfg = load_config(args.config)
        if cfg.mode != args.mode:
            log.info("config mode %s overridden by subcommand %s", cfg.mode, args.mode)
            doc = cfg.to_dict()
            doc["mode"] = args.mode
            cfg = SweepConfig.from_dict(doc)
    else:
        cfg = SweepConfig.from_dict({"mode": args.mode})
    for name in _PLAIN_OVERRIDES:
        value = getattr(args, name, None)
        if value is not None:
            setattr(cfg, name, value)
    if getattr(args, "r_a", None) is not None or getattr(args, "r_b", None) is not None:
        cfg.pairs = None
        if getattr(args, "xi", None) is None:
            cfg.xi = None
    for name in ("t_final", "snapshot_times", "snapshot_dir"):
        value = getattr(args, name, None)
        if value is not None:
            cfg.scenario[name] = value
    cfg.validate()
    return cfg


def _print_report(report) -> None:
    for c in report.checks:
        status = "ok  " if c.passed else "FAIL"
        print(f"{status} {c.name:<16} residual={fmt(c.residual)}", file=sys.stderr)


def _dispatch(cfg: SweepConfig) -> int:
    if cfg.mode == "xi-map":
        run_xi_map(cfg.resolution, cfg.out, cfg.format)
        return EXIT_OK
    if cfg.mode == "decay-sweep":
        run_decay_sweep(cfg, cfg.out)
        return EXIT_OK
    if cfg.mode == "oracle-check":
        report = run_oracle_check(cfg, cfg.out)
        verdict = "PASS" if report.passed else "FAIL"
        print(f"{verdict} oracle-check: max |closed form - oracle| = {fmt(report.worst)} "
              f"(tolerance {fmt(cfg.tolerance)}, {len(report.table.rows)} points)", file=sys.stderr)
        return EXIT_OK if report.passed else EXIT_FAIL
    if cfg.mode == "validate":
        report = run_validate(cfg, cfg.out)
        _print_report(report)
        return EXIT_OK if report.ok else EXIT_FAIL
    if cfg.mode == "scatter-demo":
        report = validate_mirror(config_mirror(cfg))
        if not report.ok:
            _print_report(report)
            if not cfg.force:
                print("mirror fails validation; rerun with --force to proceed", file=sys.stderr)
                return EXIT_FAIL
        result = run_scatter_demo(cfg, cfg.out)
        for key, value in result.ledger.as_dict().items():
            print(f"{key:<20} {fmt(value)}", file=sys.stderr)
        return EXIT_OK
    raise ConfigError(f"unknown mode {cfg.mode!r}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = resolve_config(args)
        return _dispatch(cfg)
    except (ConfigError, IoFailure) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (OutOfRange, PhaseConditionViolated, ScatteringIncomplete, GridOverrun, SideMismatch) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
