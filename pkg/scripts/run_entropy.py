"""Entropy-conservation tables: max |IS_t| for the discontinuous initial data.

    python3 scripts/run_entropy.py --mesh 2,4,8,16 --out results
"""

import argparse
import os

from polyes.harness import RunConfig, format_table, run_entropy, write_csv


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--mesh", default="2,4,8,16")
    parser.add_argument("--flux", default="ec_ec", choices=("ec_ec", "ec_es"))
    parser.add_argument("--out", default="results")
    args = parser.parse_args()
    os.makedirs(args.out, exist_ok=True)
    mesh = [int(m) for m in args.mesh.split(",")]
    for eos in ("isothermal", "polytropic"):
        for n in (3, 4):
            cfg = RunConfig(experiment="entropy", eos=eos, n=n, mesh=mesh, flux=args.flux)
            rows = run_entropy(cfg)
            print(format_table(rows, cfg), flush=True)
            write_csv(rows, os.path.join(args.out, f"entropy_{eos}_{args.flux}_N{n}.csv"))


if __name__ == "__main__":
    main()
