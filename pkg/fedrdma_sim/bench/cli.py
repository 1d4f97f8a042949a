"""
Module for the fedrdma-bench command line
"""
import argparse
import logging
import sys

from fedrdma_sim.bench.presets import PRESETS, run_preset
from fedrdma_sim.bench.runner import run_scenario
from fedrdma_sim.errors import ConfigParseError, FedRdmaError
from fedrdma_sim.utils.display import table_display
from fedrdma_sim.utils.saver import REPORT_COLUMNS, write_rows

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_IO = 3
EXIT_RUN = 4


def build_parser():
    parser = argparse.ArgumentParser(
        prog="fedrdma-bench",
        description="Chunked RDMA transfer simulator and table reproductions",
    )
    parser.add_argument("--seed", type=int, default=0, help="base seed (u64)")
    parser.add_argument("--out", default=None, help="output file, stdout by default")
    parser.add_argument("--format", choices=("csv", "text"), default="csv")
    parser.add_argument("--jobs", type=int, default=1, help="worker processes")
    parser.add_argument("--verbose", action="store_true", help="debug logging")

    verbs = parser.add_subparsers(dest="verb", required=True)
    run = verbs.add_parser("run", help="run every scenario of a config file")
    run.add_argument("config")
    sweep = verbs.add_parser("sweep", help="run a config file in worker processes")
    sweep.add_argument("config")
    preset = verbs.add_parser("preset", help="reproduce a published table")
    preset.add_argument("name", choices=sorted(PRESETS))

    return parser


def render(columns, rows, fmt, stream):
    """
    Write rows in the requested format.

    Args:
        columns (List[str]): Column order
        rows (List[Dict[str, str]]): Rows
        fmt (str): "csv" or "text"
        stream (TextIO): Destination
    """
    if fmt == "text":
        stream.write(table_display(rows, columns))
    else:
        write_rows(rows, stream, columns)


def main(argv=None):
    """
    Entry point.

    Args:
        argv (Optional[List[str]]): Arguments, sys.argv[1:] by default

    Returns:
        int: Exit status
    """
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )

    try:
        if args.verb == "preset":
            columns, rows = run_preset(args.name, seed=args.seed, jobs=args.jobs)
        else:
            jobs = args.jobs if args.verb == "sweep" else 1
            rows = run_scenario(args.config, seed=args.seed, jobs=jobs)
            columns = REPORT_COLUMNS
    except ConfigParseError as error:
        logger.error("invalid configuration: %s", error)
        return EXIT_CONFIG
    except OSError as error:
        logger.error("cannot read input: %s", error)
        return EXIT_IO
    except FedRdmaError as error:
        logger.error("run failed: %s", error)
        return EXIT_RUN

    try:
        if args.out is None:
            render(columns, rows, args.format, sys.stdout)
        else:
            with open(args.out, "w", newline="") as stream:
                render(columns, rows, args.format, stream)
    except OSError as error:
        logger.error("cannot write output: %s", error)
        return EXIT_IO

    return EXIT_OK
