"""Fit every S-curve family to a share series and print a ranked table.

    python scripts/fit_series.py path/to/series.csv
"""

import argparse

from ces_transition.io import load_series
from ces_transition.scurve import KINDS, fit


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("series")
    ap.add_argument("--model", action="append", choices=KINDS)
    args = ap.parse_args()
    series = load_series(args.series)
    fits = sorted((fit(k, series) for k in args.model or KINDS), key=lambda f: f.rmse)
    for f in fits:
        params = ", ".join(f"{k}={v:.6g}" for k, v in f.model.named_params.items())
        print(f"{f.model.kind:12} rmse={f.rmse:.3e} r2={f.r_squared:.6f} converged={f.converged}  {params}")


if __name__ == "__main__":
    main()
