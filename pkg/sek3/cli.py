"""Command-line entry point: ``python main.py <command> ...``."""
import argparse
import sys
from typing import Optional, Sequence

from sek3.commands import deadreckon, register, verify
from sek3.commands.common import (
    EXIT_DIMENSION,
    EXIT_NON_DECREASING,
    EXIT_RANK_DEFICIENT,
    EXIT_USAGE,
    InputFileError,
)
from sek3.core.config import settings
from sek3.core.errors import (
    DimensionMismatchError,
    NonDecreasingCostError,
    RankDeficientError,
    Sek3Error,
)
from sek3.core.logging import configure_logging


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sek3", description="Tools for the extended-pose group SE_K(3)")
    parser.add_argument(
        "--log-level",
        default=None,
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        type=str.upper,
        help=f"Log level on stderr (default: {settings.LOG_LEVEL})",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    deadreckon.add_parser(subparsers)
    register.add_parser(subparsers)
    verify.add_parser(subparsers)
    return parser


def _validate(parser: argparse.ArgumentParser, args) -> None:
    if args.k < 0:
        parser.error("--k must be non-negative")
    if getattr(args, "trials", 1) < 1:
        parser.error("--trials must be at least 1")
    if getattr(args, "dt", 1.0) <= 0:
        parser.error("--dt must be positive")
    if getattr(args, "max_iters", 1) < 0:
        parser.error("--max-iters must be non-negative")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _validate(parser, args)
    configure_logging(args.log_level)

    try:
        return args.handler(args)
    except (InputFileError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DimensionMismatchError as exc:
        print(f"dimension mismatch: {exc}", file=sys.stderr)
        return EXIT_DIMENSION
    except RankDeficientError as exc:
        print(f"rank deficient: {exc}", file=sys.stderr)
        return EXIT_RANK_DEFICIENT
    except NonDecreasingCostError as exc:
        print(f"no descent: {exc}", file=sys.stderr)
        return EXIT_NON_DECREASING
    except Sek3Error as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
