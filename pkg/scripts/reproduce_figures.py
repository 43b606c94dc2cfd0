#!/usr/bin/env python3
"""Emit the CSV data grids behind the four standard figures, a full
observable scan, and the characteristic-time table into ./out.

Pure data run: plots are optional sidecars (pass --plot-scripts to write
matplotlib helpers next to the CSVs).
"""

import argparse
import sys
from pathlib import Path

from qed_decoherence import cli


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", default="out", type=Path)
    ap.add_argument("--plot-scripts", action="store_true")
    args = ap.parse_args()
    args.out_dir.mkdir(parents=True, exist_ok=True)

    for fig in ("fig1", "fig2", "fig3", "fig4"):
        argv = ["figure", fig, "--out", str(args.out_dir / f"{fig}.csv")]
        if args.plot_scripts:
            argv += ["--plot-script", str(args.out_dir / f"plot_{fig}.py")]
        code = cli.main(argv)
        if code != 0:
            return code
        print(f"wrote {args.out_dir / (fig + '.csv')}")

    code = cli.main(["scan", "--out", str(args.out_dir / "scan.csv")])
    if code != 0:
        return code
    print(f"wrote {args.out_dir / 'scan.csv'}")
    return cli.main(["timescales", "--out", str(args.out_dir / "timescales.csv")])


if __name__ == "__main__":
    sys.exit(main())
