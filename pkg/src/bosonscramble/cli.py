"""Command line entry point: ``bosonscramble <experiment> --config <path> ...``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .experiments.config import EXPERIMENTS, ConfigError, load_config, paper_scale
from .experiments.output import write_outputs
from .experiments.runners import run_experiment


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bosonscramble", description=__doc__)
    parser.add_argument("experiment", choices=EXPERIMENTS)
    parser.add_argument("--config", required=True, type=Path, help="JSON experiment config")
    parser.add_argument("--out-dir", type=Path, default=Path("results"))
    parser.add_argument("--seed", type=int, help="override master_seed")
    parser.add_argument("--samples", type=int, help="override the ensemble size")
    parser.add_argument("--workers", type=int, help="worker processes (output does not depend on it)")
    parser.add_argument("--paper-scale", action="store_true", help="apply the full-size system and ensemble parameters")
    parser.add_argument("--no-svg", action="store_true", help="write CSV files only")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
        if cfg.experiment != args.experiment:
            raise ConfigError(f"config is for {cfg.experiment!r}, not {args.experiment!r}")
        if args.paper_scale:
            cfg = paper_scale(cfg)
        cfg = cfg.with_overrides(master_seed=args.seed, samples=args.samples, workers=args.workers)
        tables = run_experiment(cfg)
        manifest = write_outputs(tables, cfg, args.out_dir, svg=not args.no_svg)
    except (ConfigError, ValueError, OSError) as exc:
        print(f"bosonscramble: error: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {len(tables)} series to {args.out_dir} ({manifest.name})")
    return 0
