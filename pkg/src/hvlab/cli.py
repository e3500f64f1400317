"""Command-line entry point: run scenarios, sweeps, manifests, and traces.

Subcommands
-----------
``run <config>``       execute one scenario, print its JSON report
``sweep``              seeded randomized invariant sweep
``manifest <dir>``     run every ``*.cfg`` in a directory (sorted), print an
                       aggregate report
``trace <config>``     write omega,value CSV traces for a scenario

The exit code is 0 iff every requested scenario passed; config and usage
errors exit with 2.  ``--out`` (or the ``HVLAB_OUT`` environment variable)
selects where reports and traces are written.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import replace
from pathlib import Path

from .errors import HvlabError
from .scenarios import (
    DEFAULT_GRID_POINTS,
    DEFAULT_SWEEP_TRIALS,
    ScenarioConfig,
    emit_trace,
    load_config,
    run_scenario,
)

OUT_ENV_VAR = "HVLAB_OUT"


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hvlab",
        description="Verification scenarios for dispersion-free qubit hidden-variable models.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--tolerance", type=float, default=None, help="override the pass tolerance")
        p.add_argument(
            "--grid-points",
            type=int,
            default=None,
            help=f"omega grid size for traces (default {DEFAULT_GRID_POINTS})",
        )
        p.add_argument(
            "--normalize-all-levels",
            action="store_true",
            help="divide branching joints by every level's normalizer, including the last",
        )
        p.add_argument("--out", type=Path, default=None, help=f"output directory (default ${OUT_ENV_VAR})")

    p_run = sub.add_parser("run", help="run one scenario config")
    p_run.add_argument("config", type=Path)
    add_common(p_run)

    p_sweep = sub.add_parser("sweep", help="seeded randomized invariant sweep")
    p_sweep.add_argument("--seed", type=int, default=0)
    p_sweep.add_argument("--trials", type=int, default=DEFAULT_SWEEP_TRIALS)
    add_common(p_sweep)

    p_manifest = sub.add_parser("manifest", help="run every *.cfg in a directory")
    p_manifest.add_argument("directory", type=Path)
    add_common(p_manifest)

    p_trace = sub.add_parser("trace", help="write omega,value CSV traces for a scenario")
    p_trace.add_argument("config", type=Path)
    add_common(p_trace)

    return parser


def _apply_overrides(config: ScenarioConfig, args: argparse.Namespace) -> ScenarioConfig:
    updates = {}
    if args.tolerance is not None:
        updates["tolerance"] = args.tolerance
    if args.grid_points is not None:
        updates["grid_points"] = args.grid_points
    if args.normalize_all_levels:
        updates["normalize_all_levels"] = True
    return replace(config, **updates) if updates else config


def _out_dir(args: argparse.Namespace) -> Path | None:
    if args.out is not None:
        return args.out
    env = os.environ.get(OUT_ENV_VAR)
    return Path(env) if env else None


def _write_report(report, out: Path | None) -> None:
    if out is None:
        return
    out.mkdir(parents=True, exist_ok=True)
    (out / f"{report.scenario}__report.json").write_text(report.to_json(), encoding="utf-8")


def _cmd_run(args: argparse.Namespace) -> int:
    config = _apply_overrides(load_config(args.config), args)
    report = run_scenario(config)
    sys.stdout.write(report.to_json())
    _write_report(report, _out_dir(args))
    return 0 if report.passed else 1


def _cmd_sweep(args: argparse.Namespace) -> int:
    config = ScenarioConfig(scenario="sweep", seed=args.seed, trials=args.trials)
    config = _apply_overrides(config, args)
    report = run_scenario(config)
    sys.stdout.write(report.to_json())
    _write_report(report, _out_dir(args))
    return 0 if report.passed else 1


def _cmd_manifest(args: argparse.Namespace) -> int:
    directory = args.directory
    configs = sorted(directory.glob("*.cfg"))
    if not configs:
        sys.stderr.write(f"no *.cfg files found in {directory}\n")
        return 2
    out = _out_dir(args)
    reports = []
    for path in configs:
        config = _apply_overrides(load_config(path), args)
        report = run_scenario(config)
        _write_report(report, out)
        reports.append({"config": path.name, **report.to_dict()})
    aggregate = {
        "reports": reports,
        "pass": all(r["pass"] for r in reports),
    }
    sys.stdout.write(json.dumps(aggregate, indent=2) + "\n")
    if out is not None:
        out.mkdir(parents=True, exist_ok=True)
        (out / "manifest__report.json").write_text(
            json.dumps(aggregate, indent=2) + "\n", encoding="utf-8"
        )
    return 0 if aggregate["pass"] else 1


def _cmd_trace(args: argparse.Namespace) -> int:
    config = _apply_overrides(load_config(args.config), args)
    out = _out_dir(args)
    if out is None:
        sys.stderr.write(f"trace needs --out or ${OUT_ENV_VAR}\n")
        return 2
    written = emit_trace(config, out)
    if not written:
        sys.stdout.write(
            json.dumps({"scenario": config.scenario, "notice": "scenario produces no omega traces"})
            + "\n"
        )
        return 0
    listing = {"scenario": config.scenario, "files": [p.name for p in written]}
    sys.stdout.write(json.dumps(listing, indent=2) + "\n")
    return 0


_COMMANDS = {
    "run": _cmd_run,
    "sweep": _cmd_sweep,
    "manifest": _cmd_manifest,
    "trace": _cmd_trace,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except HvlabError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
