#!/usr/bin/env python3
"""Map the characteristic decoherence times over a (temperature, coupling) grid.

For each (T, alpha) pair: the thermal time, the exact vacuum->thermal
crossover, and the vacuum/thermal decoherence times at dp = delta_p (the
vacuum one in log space, since it overflows for weak coupling). Writes one
CSV; a quick way to see which bath regime dominates for a given charge.
"""

import argparse
import sys
import warnings
from pathlib import Path

import numpy as np

from qed_decoherence.cli import write_csv
from qed_decoherence.params import (
    DipoleValidityWarning,
    ModelParams,
    thermal_decoherence_time,
    thermal_time,
    vacuum_decoherence_time,
    vacuum_thermal_crossover,
)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="out/crossover_map.csv", type=Path)
    ap.add_argument("--omega-cut-rad-s", type=float, default=1e19)
    ap.add_argument("--delta-p-over-m0c", type=float, default=0.1)
    args = ap.parse_args()
    args.out.parent.mkdir(parents=True, exist_ok=True)

    temperatures = np.geomspace(0.1, 1e4, 11)
    alphas = np.geomspace(1e-2, 1e3, 11)
    rows = []
    for T in temperatures:
        tau_F = thermal_time(float(T))
        tau_p = vacuum_thermal_crossover(args.omega_cut_rad_s, tau_F)
        for a in alphas:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", DipoleValidityWarning)
                p = ModelParams(alpha=float(a), omega_cut=args.omega_cut_rad_s,
                                temperature=float(T), delta_p=args.delta_p_over_m0c)
            tau_vac, tau_vac_log = vacuum_decoherence_time(p, p.delta_p)
            tau_th = thermal_decoherence_time(p, p.delta_p)
            rows.append([T, a, tau_F, tau_p, tau_vac, tau_vac_log, tau_th])

    write_csv(args.out,
              ["crossover map over (temperature, alpha)",
               f"omega_cut_rad_s = {args.omega_cut_rad_s!r}, "
               f"delta_p_over_m0c = {args.delta_p_over_m0c!r}",
               "tau_vac_log = ln(tau_vac / s), finite when tau_vac overflows"],
              ["temperature_K", "alpha", "tau_F_s", "tau_p_s", "tau_vac_s",
               "tau_vac_log", "tau_th_s"],
              rows, sigfigs=12)
    print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
