"""
Command-line entry point: ``ces-transition {simulate,sweep,fit,reproduce}``.

Exit codes: 0 ok, 2 validation error, 3 infeasible scenario, 4 I/O error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import experiments
from .ces import InfeasibleIsoquant
from .io import FormatError, load_grid, load_scenario, load_series, write_fit_report, write_json, write_trajectory
from .scurve import KINDS, ScurveError, fit
from .simulate import ScenarioInvalid, simulate, simulate_sweep
from .svg import write_svg

EXIT_OK, EXIT_INVALID, EXIT_INFEASIBLE, EXIT_IO = 0, 2, 3, 4


def _err(msg: str):
    print(f"ces-transition: {msg}", file=sys.stderr)


def cmd_simulate(args) -> int:
    scenario = load_scenario(args.scenario)
    table = simulate(scenario)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    write_trajectory(table, out / "trajectory.csv", args.clamp_negative_tax)
    write_json({"label": scenario.label, **experiments.table_summary(table)}, out / "summary.json")
    if args.svg:
        write_svg(table, out / "trajectory.svg", args.clamp_negative_tax)
    return EXIT_OK


def cmd_sweep(args) -> int:
    base = load_scenario(args.scenario)
    grid = load_grid(args.grid)
    result = simulate_sweep(base, grid, args.jobs)
    experiments.write_sweep(result, base, args.out)
    for point in result.failures:
        _err(f"{point.error_kind} grid point {point.overrides}: {point.error}")
    if any(p.error_kind == "invalid" for p in result.failures):
        return EXIT_INVALID
    return EXIT_INFEASIBLE if result.failures else EXIT_OK


def cmd_fit(args) -> int:
    series = load_series(args.series)
    kinds = list(dict.fromkeys(args.model))
    fits = [fit(kind, series) for kind in kinds]
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    write_fit_report(fits, out, series.label)
    return EXIT_OK


def cmd_reproduce(args) -> int:
    experiments.reproduce(args.figure, args.out, args.jobs)
    return EXIT_OK


def _jobs(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("--jobs must be >= 1")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ces-transition", description=__doc__.strip().splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="run one scenario")
    p.add_argument("--scenario", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--clamp-negative-tax", action="store_true", help="print negative taxes as 0")
    p.add_argument("--svg", action="store_true", help="also write trajectory.svg")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("sweep", help="run a scenario over a parameter grid")
    p.add_argument("--scenario", required=True)
    p.add_argument("--grid", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--jobs", type=_jobs, default=1)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("fit", help="fit S-curves to a share series")
    p.add_argument("--series", required=True)
    p.add_argument("--model", required=True, action="append", choices=KINDS)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("reproduce", help="regenerate a figure's data or the claim report")
    p.add_argument("--figure", required=True, choices=experiments.FIGURES)
    p.add_argument("--out", required=True)
    p.add_argument("--jobs", type=_jobs, default=1)
    p.set_defaults(func=cmd_reproduce)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InfeasibleIsoquant as exc:
        _err(str(exc))
        return EXIT_INFEASIBLE
    except (FormatError, ScenarioInvalid, ScurveError, ValueError) as exc:
        _err(str(exc))
        return EXIT_INVALID
    except OSError as exc:
        _err(str(exc))
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
