"""``bohmspec <scenario-file|verify> [--out PREFIX] [--tol X] [--quiet]``.

Exit status: 0 success, 1 numerical validity failure, 2 configuration
error, 3 I/O error. ``BOHMSPEC_OUT_DIR`` sets the directory for outputs
when ``--out`` is not given.
"""
from __future__ import annotations

import argparse
import dataclasses
import os
import sys

from ..core import DomainError
from .config import ConfigError, ScenarioConfig, parse_config
from .scenarios import EXIT_CONFIG, EXIT_IO, EXIT_NUMERIC, run_scenario

OUT_DIR_ENV = "BOHMSPEC_OUT_DIR"


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bohmspec", description=__doc__.splitlines()[0])
    p.add_argument("scenario", help="path to a JSON scenario document, or 'verify'")
    p.add_argument("--out", metavar="PREFIX", help="output path prefix (no extension)")
    p.add_argument("--tol", type=float, help="truncation tolerance, overrides the document")
    p.add_argument("--quiet", action="store_true", help="suppress progress and report echo")
    return p


def _report_config_error(exc: ConfigError, source: str):
    print(f"error: invalid scenario {source}", file=sys.stderr)
    for path, reason in exc.problems:
        print(f"  {path}: {reason}", file=sys.stderr)


def _load(arg: str) -> tuple[ScenarioConfig | None, int]:
    if arg == "verify":
        return ScenarioConfig(kind="verify"), 0
    try:
        with open(arg, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        print(f"error: cannot read {arg}: {exc}", file=sys.stderr)
        return None, EXIT_IO
    try:
        return parse_config(text), 0
    except ConfigError as exc:
        _report_config_error(exc, arg)
        return None, EXIT_CONFIG


def _prefix(args, cfg: ScenarioConfig) -> str:
    if args.out:
        return args.out
    stem = "verify" if args.scenario == "verify" else \
        os.path.splitext(os.path.basename(args.scenario))[0]
    name = cfg.out or stem
    if os.path.isabs(name):
        return name
    return os.path.join(os.environ.get(OUT_DIR_ENV, "."), name)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg, status = _load(args.scenario)
    if cfg is None:
        return status
    if args.tol is not None:
        if not args.tol > 0:
            _report_config_error(ConfigError([("--tol", "must be positive")]), args.scenario)
            return EXIT_CONFIG
        cfg = dataclasses.replace(cfg, tol=args.tol)
    try:
        return run_scenario(cfg, _prefix(args, cfg), quiet=args.quiet)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
