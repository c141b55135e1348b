"""
Entry point of the ``biso`` command.

Exit codes: 0 success, 1 analysis precondition not met (unequal capacities,
comparable pair where an incomparable one is needed), 2 spec, validation or
usage error, 3 internal consistency failure (statements that should agree
disagree, an ordering the scan cannot decide, failed verification,
unexpected errors).
"""

import argparse
import logging
import sys
from typing import Optional, Sequence

from biso import config
from biso.commands import compare, info, region, verify
from biso.commands.common import apply_overrides
from biso.models.errors import (
    CapacityMismatch,
    DomainError,
    EquivalenceViolation,
    PreconditionError,
    SpecError,
    UndecidedOrdering,
)
from biso.utils.get_version import get_version_from_pyproject

_logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_PRECONDITION = 1
EXIT_INVALID = 2
EXIT_INCONSISTENT = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="biso",
        description="Partial orders and rate regions of binary-input "
        "symmetric-output channels.",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {get_version_from_pyproject()}"
    )
    parser.add_argument("-v", "--verbose", action="count", default=0)
    parser.add_argument("--tol", type=float, help="slack of non-strict comparisons")
    parser.add_argument("--margin", type=float, help="margin of strict comparisons")
    parser.add_argument("--grid", type=int, help="points of the s and x grids")
    parser.add_argument("--seed", type=int, help="seed of the random suites")
    parser.add_argument("--format", choices=("text", "yaml"), default="text")

    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in (info, compare, region, verify):
        command.register(subparsers)
    return parser


def _setup_logging(verbose: int) -> None:
    level = {0: config.log_level, 1: "INFO"}.get(verbose, "DEBUG")
    logging.basicConfig(
        level=level,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on usage errors and 0 after --help / --version
        return int(e.code or 0)
    _setup_logging(args.verbose)

    try:
        apply_overrides(args)
        return args.handler(args)
    except (CapacityMismatch, PreconditionError) as e:
        _logger.error("%s", e)
        return EXIT_PRECONDITION
    except (SpecError, DomainError) as e:
        _logger.error("%s", e)
        return EXIT_INVALID
    except (EquivalenceViolation, UndecidedOrdering) as e:
        _logger.error("%s", e)
        return EXIT_INCONSISTENT
    except Exception as e:
        _logger.exception(str(e), exc_info=e)
        return EXIT_INCONSISTENT


if __name__ == "__main__":
    sys.exit(main())
