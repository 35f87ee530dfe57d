"""Convergence tables for the manufactured solution, both fluxes and laws.

    python3 scripts/run_convergence.py --mesh 4,8,16,32 --out results
"""

import argparse
import logging
import os

from polyes.harness import RunConfig, format_table, run_convergence, write_csv


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--mesh", default="4,8,16,32")
    parser.add_argument("--degrees", default="3,4")
    parser.add_argument("--out", default="results")
    parser.add_argument("--jobs", type=int, default=1)
    args = parser.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(message)s")
    os.makedirs(args.out, exist_ok=True)
    mesh = [int(m) for m in args.mesh.split(",")]
    for eos in ("isothermal", "polytropic"):
        for flux in ("ec_ec", "ec_es"):
            for n in (int(d) for d in args.degrees.split(",")):
                cfg = RunConfig(eos=eos, flux=flux, n=n, mesh=mesh, jobs=args.jobs)
                rows = run_convergence(cfg)
                print(format_table(rows, cfg), flush=True)
                write_csv(rows, os.path.join(args.out, f"eoc_{eos}_{flux}_N{n}.csv"))


if __name__ == "__main__":
    main()
