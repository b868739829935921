#!/usr/bin/env python3
"""Run the Gaussian phonon-packet scenario and print the conservation report.

Same physics as `wavekit phonon-sim`, exposed as flags for quick parameter
scans without writing a config file.
"""

import argparse
import math
from pathlib import Path

from wavekit import gridio
from wavekit.experiments import PhononGaussianConfig, run_phonon_gaussian


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-sites", type=int, default=256)
    ap.add_argument("--kappa", type=float, default=1.0)
    ap.add_argument("--omega0", type=float, default=0.0)
    ap.add_argument("--n-quanta", type=float, default=32.0)
    ap.add_argument("--g", type=float, default=64.0, help="squared packet width")
    ap.add_argument("--k0", type=float, default=math.pi / 4.0)
    ap.add_argument("--t-final", type=float, default=40.0)
    ap.add_argument("--random-phases", action="store_true")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--units", choices=("natural", "mev-ps"), default="natural")
    ap.add_argument("--out", type=Path, default=None, help="also write CSV artifacts here")
    args = ap.parse_args()

    cfg = PhononGaussianConfig(
        n_sites=args.n_sites,
        omega0=args.omega0,
        kappa=args.kappa,
        n_quanta=args.n_quanta,
        g=args.g,
        k0=args.k0,
        t_final=args.t_final,
        random_phases=args.random_phases,
        seed=args.seed,
        units=args.units,
    )
    summary, artifacts = run_phonon_gaussian(cfg)
    for key in sorted(summary):
        print(f"{key} = {summary[key]}")
    if args.out is not None:
        args.out.mkdir(parents=True, exist_ok=True)
        gridio.write_json(args.out / "summary.json", summary)
        for name, (fmt, payload) in sorted(artifacts.items()):
            if fmt == "csv":
                gridio.write_csv(args.out / name, payload)
        print(f"artifacts in {args.out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
