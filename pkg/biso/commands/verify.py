import argparse

from biso import config
from biso.commands.common import emit
from biso.compute.suites import SUITES, run_suite


def register(subparsers) -> None:
    parser = subparsers.add_parser("verify", help="run a verification suite")
    parser.add_argument("--suite", choices=SUITES, default="paper")
    parser.add_argument(
        "--scale",
        type=float,
        default=1.0,
        help="fraction of the random instance counts to run",
    )
    parser.add_argument(
        "--seed",
        type=int,
        default=argparse.SUPPRESS,
        help="seed of the random suites, same as the global --seed",
    )
    parser.set_defaults(handler=cmd_verify)


def _measured(values: dict) -> str:
    return " ".join(f"{k}={v:.6g}" for k, v in values.items())


def cmd_verify(args: argparse.Namespace) -> int:
    """Exit status 0 iff every check passes, 3 otherwise."""
    results = run_suite(args.suite, seed=config.seed, scale=args.scale)
    failed = [r for r in results if not r.passed]
    record = {
        "suite": args.suite,
        "seed": config.seed,
        "passed": not failed,
        "checks": [r.to_dict() for r in results],
    }
    lines = []
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"{status}  {r.name}  {_measured(r.measured)}".rstrip())
        if r.detail:
            lines.append(f"      {r.detail}")
    lines.append(f"{len(results) - len(failed)}/{len(results)} checks passed")
    emit(args, record, "\n".join(lines))
    return 3 if failed else 0
