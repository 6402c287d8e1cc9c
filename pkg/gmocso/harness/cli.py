"""Command-line entry point: `gmocso run|metrics|compare|plotdata|reference`."""
import argparse
from pathlib import Path
from typing import List, Optional, Sequence

from .. import __description__, __version__
from ..schema import METRIC_NAMES, PROBLEM_IDS
from ..utils import CommandFailed, install_tracebacks
from .commands import (DEFAULT_COMPARE_METRICS, cmd_compare, cmd_metrics, cmd_plotdata,
                       cmd_reference, cmd_run)


def _split(values: Sequence[str]) -> List[str]:
    return [item.strip() for value in values for item in value.split(",") if item.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gmocso", description=__description__)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", help="Execute seeded runs described by a JSON config")
    run.add_argument("--config", type=Path, required=True, help="Experiment config file")
    run.add_argument("--out", type=Path, default=None, help="Results directory")
    run.add_argument(
        "--jobs", type=int, default=None, help="Worker processes (default: GMOCSO_JOBS or 1)"
    )

    metrics = commands.add_parser("metrics", help="Score stored fronts against a reference")
    metrics.add_argument("--results", type=Path, required=True, help="Results directory")
    metrics.add_argument(
        "--reference",
        default=None,
        help="analytic | pooled | file:PATH (default: analytic, pooled for PressureVessel)",
    )

    compare = commands.add_parser("compare", help="Rank algorithms and test significance")
    compare.add_argument(
        "--inputs", nargs="+", required=True, help="Metrics or summary files, LABEL=PATH or PATH"
    )
    compare.add_argument("--baseline", required=True, help="Algorithm label to test against")
    compare.add_argument("--alpha", type=float, default=0.05, help="Significance level")
    compare.add_argument(
        "--metrics",
        default=",".join(DEFAULT_COMPARE_METRICS),
        help=f"Comma separated subset of {', '.join(METRIC_NAMES)}",
    )
    compare.add_argument("--out", type=Path, default=None, help="Directory for ranks.csv and significance.csv")

    plotdata = commands.add_parser("plotdata", help="Export fronts as plot-ready CSV files")
    plotdata.add_argument("--results", type=Path, required=True, help="Results directory")
    plotdata.add_argument("--problem", required=True, help=f"One of {', '.join(PROBLEM_IDS)}")

    reference = commands.add_parser("reference", help="Write a sampled analytic Pareto front")
    reference.add_argument("--problem", required=True, help=f"One of {', '.join(PROBLEM_IDS)}")
    reference.add_argument("--points", type=int, default=1000, help="Number of samples")
    reference.add_argument("--out", type=Path, required=True, help="Destination CSV")
    return parser


def dispatch(args: argparse.Namespace) -> None:
    if args.command == "run":
        cmd_run(args.config, out=args.out, jobs=args.jobs)
    elif args.command == "metrics":
        cmd_metrics(args.results, reference=args.reference)
    elif args.command == "compare":
        cmd_compare(
            _split(args.inputs),
            baseline=args.baseline,
            alpha=args.alpha,
            metrics=_split([args.metrics]),
            out=args.out,
        )
    elif args.command == "plotdata":
        cmd_plotdata(args.results, args.problem)
    else:
        cmd_reference(args.problem, n_points=args.points, out=args.out)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse `argv` and run the selected command.

    Returns 0 on success; a failed command exits with its error's code (2 config, 3 I/O,
    4 missing reference, 1 anything unexpected).
    """
    install_tracebacks()
    args = build_parser().parse_args(argv)
    try:
        dispatch(args)
    except CommandFailed as exc:
        raise SystemExit(exc.exit_code) from exc
    return 0
