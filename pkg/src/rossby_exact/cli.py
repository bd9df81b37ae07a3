"""Command-line front end.

Exit codes: 0 success, 1 configuration/parameter/I-O error, 2 a
verification check failed.
"""
from __future__ import annotations

import argparse
import sys

import numpy as np

from .config import DEFAULT_SWEEP_SAMPLES, load_config
from .errors import ConfigError, RossbyError
from .families import FAMILY_SUMMARY
from .fieldio import export_csv, export_sweep_csv, export_vtk, sample_grid, write_report
from .model import resonance_sweep
from .verify import verify_solution

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_FAILED = 2


def _say(args, *lines):
    if not args.quiet:
        for line in lines:
            print(line)


def cmd_list_families(args) -> int:
    for fam, info in FAMILY_SUMMARY.items():
        print(f"family {fam}: f(z) = {info['profile']}")
        print(f"  g(z)        = {info['zonal']}")
        print(f"  parameters  : {info['parameters']}")
        print(f"  constraints : {info['constraints']}")
        print(f"  kappa       = {info['kappa']}")
        if "M" in info:
            print(f"  M           = {info['M']}")
    return EXIT_OK


def cmd_verify(args) -> int:
    cfg = load_config(args.config)
    solution = cfg.solution()
    report = verify_solution(solution, cfg.plan())
    if cfg.path("report"):
        write_report(report, cfg.path("report"), cfg.resolved())
    rows = [
        f"{name:18s} max={c.max:.3e} mean={c.mean:.3e} tol={c.tolerance:.0e} {'PASS' if c.passed else 'FAIL'}"
        for name, c in report.checks.items()
    ]
    _say(args, f"family {solution.family}, {report.n_points} points, seed {report.seed}", *rows)
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_build(args) -> int:
    cfg = load_config(args.config)
    if not (cfg.path("csv") or cfg.path("vtk")):
        raise ConfigError("config.output: build needs 'csv' and/or 'vtk'")
    solution = cfg.solution()
    block = sample_grid(solution, cfg.grid_spec(), cfg.plan_kwargs()["seed"])
    for key, writer in (("csv", export_csv), ("vtk", export_vtk)):
        if cfg.path(key):
            writer(block, cfg.path(key))
            _say(args, f"wrote {cfg.path(key)}")
    for name, (lo, hi) in block.extrema().items():
        _say(args, f"{name:4s} min={lo:.6g} max={hi:.6g}")
    return EXIT_OK


def cmd_sweep(args) -> int:
    cfg = load_config(args.config)
    if cfg.sweep is None:
        raise ConfigError("config has no 'sweep' section")
    lo, hi = cfg.sweep["range"]
    if not hi > lo:
        raise ConfigError(f"config.sweep.range: empty range [{lo}, {hi}]")
    values = np.linspace(lo, hi, cfg.sweep.get("samples", DEFAULT_SWEEP_SAMPLES))
    parameter = cfg.sweep["parameter"]
    rows, resonances = resonance_sweep(cfg.family, cfg.physical, parameter, values)
    if cfg.path("sweep_csv"):
        export_sweep_csv(parameter, rows, resonances, cfg.path("sweep_csv"))
    _say(args, f"family {cfg.family.family}: {parameter} in [{lo}, {hi}], {len(rows)} samples")
    for r in resonances:
        _say(args, f"resonance at {parameter} = {r.root:.15g} (bracket [{r.lo:.6g}, {r.hi:.6g}])")
    _say(args, f"{len(resonances)} resonance(s) flagged")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rossby-exact",
        description="Exact drifting Rossby-wave/vortex solutions: build, verify, sweep.",
    )
    parser.add_argument("--quiet", action="store_true", help="suppress summary text")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("list-families", help="describe the nine solution families").set_defaults(func=cmd_list_families)
    for name, func, text in (
        ("verify", cmd_verify, "certify a configured solution and write a report"),
        ("build", cmd_build, "sample a configured solution on a grid"),
        ("sweep", cmd_sweep, "tabulate M over a parameter range and flag resonances"),
    ):
        p = sub.add_parser(name, help=text)
        p.add_argument("config", help="path to a JSON run configuration")
        p.set_defaults(func=func)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except RossbyError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
