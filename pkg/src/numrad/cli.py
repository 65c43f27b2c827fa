"""Command-line interface.

Subcommands:

* ``verify`` runs a verification campaign over the catalog (config file
  plus flag overrides), streams per-check reports, and prints a summary
  JSON to stdout.  Exit code 0 means completed with no violations, 1
  means completed with violations, 2 means a usage/config/parse error.
* ``bounds`` prints every computed quantity for one matrix file.
* ``sweep`` exports the sampled rotation function as CSV.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import ConfigError, ParseError, ToolkitError
from .harness import CampaignConfig, bounds_report, run_campaign, sweep_rows
from .opcore import load_matrix

EXIT_OK = 0
EXIT_VIOLATIONS = 1
EXIT_USAGE = 2


def _parse_dims(text: str) -> list:
    text = text.strip()
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo_i, hi_i = int(lo), int(hi)
            if hi_i < lo_i:
                raise ValueError
            return list(range(lo_i, hi_i + 1))
        if "," in text:
            return [int(x) for x in text.split(",") if x.strip()]
        return [int(text)]
    except ValueError as exc:
        raise ConfigError(f"cannot parse dims {text!r} (expected forms: 4, 2..8, 2,3,5)") from exc


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="numrad",
        description="numerical radius toolkit: verify inequality catalog, compute bounds, export sweeps",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a verification campaign")
    v.add_argument("--config", help="campaign config JSON file")
    v.add_argument("--seed", type=int, help="campaign seed (u64)")
    v.add_argument("--samples", type=int, help="samples per family")
    v.add_argument("--dims", help="dimensions: 4, 2..8, or 2,3,5")
    v.add_argument("--entries", help="comma-separated entry ids (default: all)")
    v.add_argument("--families", help="comma-separated family names")
    v.add_argument("--tol-abs", type=float, dest="tol_abs", help="absolute tolerance")
    v.add_argument("--tol-rel", type=float, dest="tol_rel", help="relative tolerance")
    v.add_argument("--out", help="report output path")
    v.add_argument("--format", choices=("jsonl", "csv"), help="report format")
    v.add_argument("--workers", type=int, help="parallel worker processes")
    v.add_argument("--theta-grid", type=int, dest="theta_grid", help="rotation grid override")
    v.add_argument("--t-grid", dest="t_grid", help="comma-separated t grid override")
    v.add_argument("--quad-samples", type=int, dest="quad_samples", help="samples drawing quadruples")

    b = sub.add_parser("bounds", help="compute all quantities for a matrix file")
    b.add_argument("--matrix", required=True, help="matrix JSON file")

    s = sub.add_parser("sweep", help="export the rotation sweep as CSV")
    s.add_argument("--matrix", required=True, help="matrix JSON file")
    s.add_argument("--grid", type=int, default=1024, help="number of grid points")
    return parser


def _config_from_args(args) -> CampaignConfig:
    if args.config is not None:
        try:
            with open(args.config, "r", encoding="utf-8") as fh:
                obj = json.load(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"invalid JSON in config {args.config}: {exc}") from exc
        cfg = CampaignConfig.from_obj(obj)
    else:
        cfg = CampaignConfig()
    if args.seed is not None:
        cfg.seed = args.seed
    if args.samples is not None:
        cfg.samples_per_family = args.samples
    if args.dims is not None:
        cfg.dims = _parse_dims(args.dims)
    if args.entries is not None:
        cfg.entries = [e.strip() for e in args.entries.split(",") if e.strip()]
    if args.families is not None:
        cfg.families = [f.strip() for f in args.families.split(",") if f.strip()]
    if args.tol_abs is not None:
        cfg.atol = args.tol_abs
    if args.tol_rel is not None:
        cfg.rtol = args.tol_rel
    if args.out is not None:
        cfg.out = args.out
    if args.format is not None:
        cfg.format = args.format
    if args.workers is not None:
        cfg.workers = args.workers
    if args.theta_grid is not None:
        cfg.theta_grid = args.theta_grid
    if args.t_grid is not None:
        try:
            cfg.t_grid = [float(x) for x in args.t_grid.split(",") if x.strip()]
        except ValueError as exc:
            raise ConfigError(f"cannot parse t grid {args.t_grid!r}") from exc
    if args.quad_samples is not None:
        cfg.quad_samples = args.quad_samples
    cfg.validate()
    return cfg


def _cmd_verify(args) -> int:
    cfg = _config_from_args(args)
    report = run_campaign(cfg)
    json.dump(report.to_obj(), sys.stdout, indent=2)
    sys.stdout.write("\n")
    return EXIT_OK if report.total_violations == 0 else EXIT_VIOLATIONS


def _cmd_bounds(args) -> int:
    matrix = load_matrix(args.matrix)
    json.dump(bounds_report(matrix), sys.stdout, indent=2)
    sys.stdout.write("\n")
    return EXIT_OK


def _cmd_sweep(args) -> int:
    matrix = load_matrix(args.matrix)
    rows, omega = sweep_rows(matrix, args.grid)
    sys.stdout.write("theta,g\n")
    for theta, g in rows:
        sys.stdout.write(f"{theta!r},{g!r}\n")
    sys.stdout.write(f"# omega = {omega!r}\n")
    return EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on usage errors already; normalize others
        return EXIT_USAGE if exc.code not in (0,) else 0
    try:
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "bounds":
            return _cmd_bounds(args)
        if args.command == "sweep":
            return _cmd_sweep(args)
        raise ConfigError(f"unknown command {args.command!r}")
    except (ConfigError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ToolkitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
