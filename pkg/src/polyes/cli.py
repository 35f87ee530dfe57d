"""Command line driver: ``polyes solve --config run.cfg [overrides]``."""

from __future__ import annotations

import argparse
import logging
import sys

from .dgsem import InadmissibleStateError
from .harness import (
    EXPERIMENTS,
    FLUX_PAIRS,
    ConfigError,
    SolverFailure,
    format_table,
    make_config,
    read_config_file,
    run,
    write_csv,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_SOLVER = 3


def _mesh_list(text):
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def build_parser():
    parser = argparse.ArgumentParser(prog="polyes")
    sub = parser.add_subparsers(dest="command", required=True)
    solve = sub.add_parser("solve", help="run a convergence or entropy-conservation study")
    solve.add_argument("--config", help="key=value run configuration file")
    solve.add_argument("--experiment", choices=EXPERIMENTS)
    solve.add_argument("--n", type=int, help="polynomial degree")
    solve.add_argument("--mesh", type=_mesh_list, help="elements per direction, e.g. 4,8,16")
    solve.add_argument("--eos", choices=("isothermal", "polytropic"))
    solve.add_argument("--gamma", type=float)
    solve.add_argument("--kappa", type=float)
    solve.add_argument("--c", type=float)
    solve.add_argument("--flux", choices=tuple(FLUX_PAIRS))
    solve.add_argument("--cfl", type=float)
    solve.add_argument("--tfinal", type=float)
    solve.add_argument("--out", help="CSV output path")
    solve.add_argument("--jobs", type=int, help="mesh sizes solved concurrently")
    solve.add_argument("--seed", type=int, help="unused by experiment runs, which are deterministic")
    solve.add_argument("-v", "--verbose", action="store_true")
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK

    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(message)s")
    try:
        file_values = read_config_file(args.config) if args.config else {}
        cfg = make_config(
            file_values,
            experiment=args.experiment, n=args.n, mesh=args.mesh, eos=args.eos,
            gamma=args.gamma, kappa=args.kappa, c=args.c, flux=args.flux, cfl=args.cfl,
            tfinal=args.tfinal, out=args.out, jobs=args.jobs,
        )
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    try:
        rows = run(cfg)
    except (SolverFailure, InadmissibleStateError) as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER

    print(format_table(rows, cfg))
    if cfg.out:
        write_csv(rows, cfg.out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
