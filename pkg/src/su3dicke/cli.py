"""Command-line driver.

    su3dicke sweep  --config cfg.json [--irrep h1,h2,h3] [--configuration xi|lambda|v]
                    [--out DIR] [--threads K] [--seed S]
    su3dicke bisect --config cfg.json --axis mu12|mu23 --fixed V
                    [--lo A] [--hi B] [--width W] [--irrep h1,h2,h3]

Exit codes: 0 success, 2 configuration error, 3 runtime failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys

from .gt import IrrepSpec, generators_for
from .sweep import ConfigError, SweepConfig, critical_bisect, run_sweep

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_RUNTIME = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="su3dicke", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("sweep", help="run a coupling-plane grid sweep")
    sweep.add_argument("--config", required=True, help="JSON or TOML sweep config")
    sweep.add_argument("--irrep", help="override irrep list with one 'h1,h2,h3'")
    sweep.add_argument("--configuration", choices=("xi", "lambda", "v"))
    sweep.add_argument("--out", help="output directory")
    sweep.add_argument("--threads", type=int)
    sweep.add_argument("--seed", type=int)
    sweep.add_argument("--label", help="basename for csv/meta outputs")

    bisect = sub.add_parser("bisect", help="bisect the phase boundary on one axis")
    bisect.add_argument("--config", required=True)
    bisect.add_argument("--axis", required=True, choices=("mu12", "mu23"))
    bisect.add_argument("--fixed", required=True, type=float, help="value of the other axis")
    bisect.add_argument("--lo", type=float, default=None)
    bisect.add_argument("--hi", type=float, default=None)
    bisect.add_argument("--width", type=float, default=1e-4)
    bisect.add_argument("--irrep", help="override: bisect this irrep only")
    return parser


def _load_config(args) -> SweepConfig:
    config = SweepConfig.from_file(args.config)
    updates = {}
    if getattr(args, "irrep", None):
        updates["irreps"] = (IrrepSpec.parse(args.irrep),)
    if getattr(args, "configuration", None):
        updates["configuration"] = args.configuration
    if getattr(args, "out", None):
        updates["out_dir"] = args.out
    if getattr(args, "threads", None):
        updates["threads"] = args.threads
    if getattr(args, "label", None):
        updates["label"] = args.label
    if getattr(args, "seed", None) is not None:
        updates["minimizer"] = dataclasses.replace(config.minimizer, seed=args.seed)
    return dataclasses.replace(config, **updates) if updates else config


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        config = _load_config(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    if args.command == "sweep":
        try:
            csv_path, meta_path = run_sweep(config)
        except ConfigError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_CONFIG
        except Exception as exc:  # noqa: BLE001 - CLI boundary
            print(f"runtime failure: {exc}", file=sys.stderr)
            return EXIT_RUNTIME
        print(csv_path)
        print(meta_path)
        return EXIT_OK

    # bisect
    try:
        irrep = config.irreps[0]
        gens = generators_for(irrep)
        lo = args.lo if args.lo is not None else 0.0
        if args.hi is not None:
            hi = args.hi
        elif args.axis == "mu12":
            hi = config.grid.mu12_max
        else:
            hi = config.grid.mu23_max
        value = critical_bisect(
            config.base_params(),
            gens,
            axis=args.axis,
            fixed_value=args.fixed,
            lo=lo,
            hi=hi,
            width=args.width,
            opts=config.minimizer,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        print(f"runtime failure: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    print(f"{value:.6f}")
    return EXIT_OK


def app() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    raise SystemExit(main())
