# src/apps/experiments/router.py

"""
Command-line surface: argument parsing into a RunSpec
"""

import argparse
from pathlib import Path
from typing import Optional, Sequence

from src.apps.experiments.schemas import RunSpec
from src.common.enums import ChannelFamily, Command, Eigensolver, OutputFormat
from src.core.config import settings


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="choi-channels",
        description="Classify quantum channels in the Choi picture and run depolarizing threshold experiments.",
    )
    parser.add_argument("command", choices=[c.value for c in Command], help="experiment to run")
    parser.add_argument("--version", action="version", version=f"%(prog)s {settings.app_version}")

    source = parser.add_argument_group("channel")
    source.add_argument("--family", choices=[f.value for f in ChannelFamily], help="builtin channel family")
    source.add_argument("--file", type=Path, help="channel file (JSON)")
    source.add_argument("--d", type=int, help="local dimension")
    source.add_argument("--q", type=float, help="depolarizing parameter")
    source.add_argument("--allow-non-tp", action="store_true", help="accept maps that are not TP or not CP")
    source.add_argument("--one-sided", action="store_true", help="classify phi (x) Id on the ancilla only")

    grid = parser.add_argument_group("grids")
    grid.add_argument("--qmin", type=float, help="first q of a sweep")
    grid.add_argument("--qmax", type=float, help="last q of a sweep")
    grid.add_argument("--steps", type=int, help="sweep points, or profile grid divisions")
    grid.add_argument("--dmax", type=int, help="largest d of the conjecture sweep")

    search = parser.add_argument_group("search")
    search.add_argument("--seed", type=int, default=settings.seed, help="seed of every randomized search")
    search.add_argument("--restarts", type=int, help="see-saw restarts")
    search.add_argument(
        "--tol",
        type=float,
        help="search tolerance (classify), bisection width (threshold, conjecture) or sign tolerance (sweep)",
    )
    search.add_argument("--workers", type=int, help="threads for independent restarts and grid points")
    search.add_argument("--eigensolver", choices=[e.value for e in Eigensolver], help="Hermitian eigensolver")

    output = parser.add_argument_group("output")
    output.add_argument("--out", type=Path, help="output file, stdout when omitted")
    output.add_argument("--format", choices=[f.value for f in OutputFormat], default=OutputFormat.CSV.value)
    return parser


def parse_run_spec(argv: Optional[Sequence[str]] = None) -> RunSpec:
    """
    Raises:
        SystemExit: argparse rejected the arguments (code 2) or printed help
        pydantic.ValidationError: the arguments do not form a valid run
    """
    args = build_parser().parse_args(argv)
    values = {key: value for key, value in vars(args).items() if value is not None}
    return RunSpec(**values)
