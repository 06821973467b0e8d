#!/usr/bin/env python3
"""Run the three standard parameter scans and write CSV + SVG files.

Produces, for both bath kinds at B = 0.4, tau = tau_d = 1 (cutoff
units, gamma0 = 1):

  * qsl_vs_s.csv/.svg           -- bound time against the Ohmic exponent
  * qsl_vs_tau_s<k>.csv/.svg    -- against the initial time, one file per
                                   exponent in {0.1, 1.0, 1.5, 2.5}
  * qsl_vs_b_s<k>.csv/.svg      -- against the magnetic coupling, same
                                   exponents

Usage:  python scripts/run_scans.py [--outdir OUT] [--points N]
"""

import argparse
import pathlib
import sys

from topoqsl.cli import main as cli

S_PANELS = (0.1, 1.0, 1.5, 2.5)


def run(outdir: pathlib.Path, points: int) -> int:
    outdir.mkdir(parents=True, exist_ok=True)
    common = ["--bath", "both", "--b", "0.4", "--tau", "1", "--tau-d", "1",
              "--points", str(points), "--format", "both"]

    jobs = [(["scan", "--axis", "s", "--lo", "0.05", "--hi", "3.0", *common],
             outdir / "qsl_vs_s.csv")]
    for s in S_PANELS:
        tag = str(s).replace(".", "p")
        jobs.append((
            ["scan", "--axis", "tau", "--lo", "0.0", "--hi", "10.0", "--s", str(s), *common],
            outdir / f"qsl_vs_tau_s{tag}.csv",
        ))
        jobs.append((
            ["scan", "--axis", "b", "--lo", "0.0", "--hi", "1.0", "--s", str(s), *common],
            outdir / f"qsl_vs_b_s{tag}.csv",
        ))

    for argv, path in jobs:
        code = cli(argv + ["--out", str(path)])
        if code != 0:
            print(f"scan failed ({code}): {path.name}", file=sys.stderr)
            return code
        print(f"wrote {path} and {path.with_suffix('.svg')}")
    return 0


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--outdir", default="scans", type=pathlib.Path)
    parser.add_argument("--points", default=120, type=int)
    args = parser.parse_args()
    return run(args.outdir, args.points)


if __name__ == "__main__":
    sys.exit(main())
