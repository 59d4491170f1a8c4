"""Regenerate every figure's data and the claim report under one directory.

    python scripts/run_figures.py --out results --jobs 4
"""

import argparse
from pathlib import Path

from ces_transition import experiments


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="results")
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()
    for figure in experiments.FIGURES:
        files = experiments.reproduce(figure, Path(args.out) / f"fig{figure}", args.jobs)
        print(f"figure {figure}: {len(files)} files")


if __name__ == "__main__":
    main()
