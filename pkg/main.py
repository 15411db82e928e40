import argparse
import logging
import os
import sys

from dotenv import load_dotenv

from bipartite_maps import CensusGuardError, CommandConfig, MapEngine
from bipartite_maps.census.census import CENSUS_GUARD
from bipartite_maps.errors import BipartiteMapsError
from bipartite_maps.utils import (
    census_rows,
    closed_form_doc,
    kernel_doc,
    marked_rows,
    render,
    rooted_rows,
    save_json,
    series_rows,
)
from bipartite_maps.verify import SUITES

logger = logging.getLogger(__name__)

DEFAULT_TRUNCATION = 12
DEFAULT_CENSUS_SIZE = 6
DEFAULT_KERNEL_CUTOFF = 4
DEFAULT_FORMAT = "json"
DEFAULT_SEED = 0
DEFAULT_LOG_LEVEL = "WARNING"


def output_arguments(
    parser: argparse.ArgumentParser, suppress: bool = False
) -> argparse.ArgumentParser:
    """Adds --format and --output; with suppress, an unset flag leaves the namespace alone."""
    parser.add_argument(
        "--format",
        choices=["json", "text", "latex", "csv"],
        default=argparse.SUPPRESS if suppress else DEFAULT_FORMAT,
        help=f"Output format (default: {DEFAULT_FORMAT})",
    )
    parser.add_argument(
        "--output",
        default=argparse.SUPPRESS if suppress else None,
        help="Also save the result as JSON to this file",
    )
    return parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="Exact generating functions of bipartite maps by genus and face degrees."
    )
    output_arguments(parser)
    parser.add_argument(
        "--workers",
        type=int,
        default=None,
        help="Process-pool size (default: BIPMAPS_WORKERS or the CPU count)",
    )
    parser.add_argument(
        "--log-level",
        default=os.environ.get("BIPMAPS_LOG_LEVEL", DEFAULT_LOG_LEVEL),
        help=f"Log level on stderr (default: BIPMAPS_LOG_LEVEL or {DEFAULT_LOG_LEVEL})",
    )
    parser.add_argument("--quiet", action="store_true", help="Only log errors; no progress bars")
    subparsers = parser.add_subparsers(dest="subcommand", required=True)
    output = output_arguments(argparse.ArgumentParser(add_help=False), suppress=True)

    census = subparsers.add_parser(
        "census", parents=[output], help="Enumerate transitive permutation pairs"
    )
    census.add_argument(
        "-n",
        "--n",
        type=int,
        default=DEFAULT_CENSUS_SIZE,
        help=f"Number of edges (default: {DEFAULT_CENSUS_SIZE})",
    )
    census.add_argument(
        "--table",
        choices=["labelled", "rooted", "marked"],
        default="labelled",
        help="Which table to print (default: labelled)",
    )
    census.add_argument(
        "--override",
        action="store_true",
        help=f"Allow sizes above {CENSUS_GUARD}",
    )

    series = subparsers.add_parser("series", parents=[output], help="Coefficients of F_g or L_g")
    series.add_argument("-g", "--g", type=int, default=1, help="Genus (default: 1)")
    series.add_argument(
        "-N",
        type=int,
        default=DEFAULT_TRUNCATION,
        help=f"Truncation order in t (default: {DEFAULT_TRUNCATION})",
    )
    series.add_argument("--target", choices=["F", "L"], default="F", help="Rooted F or unrooted L")
    series.add_argument(
        "--chart",
        choices=["txp", "zup"],
        default="txp",
        help="Coordinates: (t, x, p) or (z, u, p) (default: txp)",
    )

    closed = subparsers.add_parser(
        "closed-form", parents=[output], help="Closed form of F_g or L_g in Greek variables"
    )
    closed.add_argument("-g", "--g", type=int, default=1, help="Genus (default: 1)")
    closed.add_argument(
        "-N",
        type=int,
        default=DEFAULT_TRUNCATION,
        help=f"Truncation order used by the fit (default: {DEFAULT_TRUNCATION})",
    )
    closed.add_argument("--target", choices=["F", "L"], default="F", help="Rooted F or unrooted L")
    closed.add_argument(
        "--method",
        choices=["toprec", "fit"],
        default="toprec",
        help="Residue recursion or ansatz fit (default: toprec)",
    )

    kernel = subparsers.add_parser(
        "kernel", parents=[output], help="Kernel structure and Taylor data"
    )
    kernel.add_argument(
        "-K",
        type=int,
        default=DEFAULT_KERNEL_CUTOFF,
        help=f"Face-degree cutoff (default: {DEFAULT_KERNEL_CUTOFF})",
    )
    kernel.add_argument(
        "--seed",
        type=int,
        default=DEFAULT_SEED,
        help=f"Seed of the random specialization (default: {DEFAULT_SEED})",
    )

    verify = subparsers.add_parser("verify", parents=[output], help="Run verification suites")
    verify.add_argument("--suite", choices=["all", *SUITES], default="all", help="Suite to run")
    verify.add_argument(
        "--slow",
        action="store_true",
        default=os.environ.get("BIPMAPS_SLOW") == "1",
        help="Include slow checks (default: BIPMAPS_SLOW=1)",
    )
    verify.add_argument(
        "--seed",
        type=int,
        default=DEFAULT_SEED,
        help=f"Seed of randomized checks (default: {DEFAULT_SEED})",
    )
    verify.add_argument(
        "-N",
        type=int,
        default=DEFAULT_TRUNCATION,
        help=f"Truncation order (default: {DEFAULT_TRUNCATION})",
    )
    verify.add_argument(
        "-n",
        "--n",
        type=int,
        default=DEFAULT_CENSUS_SIZE,
        help=f"Largest census size (default: {DEFAULT_CENSUS_SIZE})",
    )
    return parser


def config_from_args(args: argparse.Namespace) -> CommandConfig:
    fields = {
        key: value
        for key, value in vars(args).items()
        if key in CommandConfig.__dataclass_fields__ and value is not None
    }
    return CommandConfig(**fields)


def run_command(config: CommandConfig, out=sys.stdout) -> int:
    """Runs one subcommand and writes its output; returns the exit status."""
    try:
        config.validate()
    except ValueError as e:
        logger.error(f"Invalid arguments: {e}")
        return 2

    engine = MapEngine(
        N=config.N,
        n=config.n,
        K=config.K,
        workers=config.workers,
        override=config.override,
        seed=config.seed,
    )
    status = 0
    try:
        if config.subcommand == "census":
            if config.table == "rooted":
                data = rooted_rows(engine.rooted_census())
            else:
                table, marked = engine.census()
                data = census_rows(table) if config.table == "labelled" else marked_rows(marked)
        elif config.subcommand == "series":
            if config.target == "F":
                data = series_rows(engine.rooted(config.g, config.chart))
            else:
                data = series_rows(engine.unrooted(config.g, config.chart))
        elif config.subcommand == "closed-form":
            data = closed_form_doc(engine.closed_form(config.g, config.target, config.method))
        elif config.subcommand == "kernel":
            data = kernel_doc(engine.kernel(), config.seed)
        else:
            data = engine.verify(config.suite, config.slow)
            status = 0 if all(report["passed"] for report in data) else 1
    except CensusGuardError as e:
        logger.error(str(e))
        return 2
    except BipartiteMapsError:
        logger.exception(f"{config.subcommand} failed")
        return 1

    if config.output:
        save_json(config.output, data)
        logger.info(f"Saved {config.subcommand} output to {config.output}")
    out.write(render(data, config.format))
    return status


def main(argv: list[str] | None = None) -> int:
    load_dotenv()
    parser = build_parser()
    args = parser.parse_args(argv)
    level = "ERROR" if args.quiet else args.log_level.upper()
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    return run_command(config_from_args(args))


if __name__ == "__main__":
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        print("\nReceived keyboard interrupt, shutting down...", file=sys.stderr)
        sys.exit(130)
