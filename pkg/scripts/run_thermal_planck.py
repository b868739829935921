#!/usr/bin/env python3
"""Relax a photon distribution to equilibrium and print the headline numbers.

Reports the equilibrium residual, the displacement-law product lambda_m*p_T/hbar,
and the photon count per peak-wavelength cube.
"""

import argparse
from pathlib import Path

from wavekit import gridio
from wavekit.experiments import ThermalPlanckConfig, run_thermal_planck


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--gamma", type=float, default=1.0, help="exchange rate")
    ap.add_argument("--temperature", type=float, default=1.0)
    ap.add_argument(
        "--model",
        default="wien-stimulated",
        choices=("rayleigh-jeans", "wien", "wien-stimulated", "none"),
    )
    ap.add_argument("--init", default="zero", choices=("zero", "rayleigh-jeans", "wien", "planck"))
    ap.add_argument("--x-min", type=float, default=0.05, help="grid start in eps/kT")
    ap.add_argument("--x-max", type=float, default=20.0)
    ap.add_argument("--n-cells", type=int, default=200)
    ap.add_argument("--n-folds", type=float, default=30.0)
    ap.add_argument("--units", choices=("natural", "mev-ps"), default="natural")
    ap.add_argument("--out", type=Path, default=None, help="also write CSV artifacts here")
    args = ap.parse_args()

    cfg = ThermalPlanckConfig(
        gamma=args.gamma,
        temperature=args.temperature,
        model=args.model,
        init=args.init,
        x_min=args.x_min,
        x_max=args.x_max,
        n_cells=args.n_cells,
        n_folds=args.n_folds,
        units=args.units,
    )
    summary, artifacts = run_thermal_planck(cfg)
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
