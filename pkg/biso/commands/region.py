import argparse
import logging

import pandas as pd

from biso.commands.common import emit, equalize_to, read_channel, table
from biso.compute.export import regions_frame, write_csv
from biso.compute.regions import (
    dominant_receiver,
    equivalence_report,
    f_profile,
    ob_region,
    rtd_region,
    superposition_region,
    td_region,
)
from biso.models.channel import capacity, match_capacities
from biso.utils.roundit import format_value

_logger = logging.getLogger(__name__)

BOUNDS = ("td", "sup", "rtd", "ob")


def register(subparsers) -> None:
    parser = subparsers.add_parser(
        "region", help="rate-region frontiers and maximum sum rates"
    )
    parser.add_argument("spec1")
    parser.add_argument("spec2")
    parser.add_argument("--bound", choices=BOUNDS + ("all",), default="all")
    parser.add_argument("--csv", metavar="PATH", help="write the frontiers to a CSV file")
    parser.add_argument(
        "--equalize",
        action="store_true",
        help="rescale the second channel (bsc or bec) to the first one's capacity",
    )
    parser.set_defaults(handler=cmd_region)


def cmd_region(args: argparse.Namespace) -> int:
    ch1, _ = read_channel(args.spec1)
    ch2, spec2 = read_channel(args.spec2)
    if args.equalize:
        ch2 = equalize_to(ch2, spec2, capacity(ch1))
    bounds = BOUNDS if args.bound == "all" else (args.bound,)

    # rtd and ob are defined for equal capacities only
    if {"rtd", "ob"} & set(bounds):
        ch1, ch2, _ = match_capacities(ch1, ch2)

    regions = []
    for bound in bounds:
        if bound == "td":
            regions.append(td_region(capacity(ch1), capacity(ch2)))
        elif bound == "sup":
            dominant = dominant_receiver(ch1, ch2)
            regions.append(superposition_region(ch1, ch2, dominant=dominant))
        elif bound == "rtd":
            regions.append(rtd_region(f_profile(ch1), f_profile(ch2)))
        else:
            regions.append(ob_region(f_profile(ch1), f_profile(ch2)))

    if args.csv:
        write_csv(regions_frame(regions), args.csv)

    summary = pd.DataFrame(
        {
            "bound": [r.bound for r in regions],
            "max_sum_rate": [r.max_sum_rate for r in regions],
            "points": [len(r.frontier) for r in regions],
        }
    )
    record = {
        "first": str(ch1),
        "second": str(ch2),
        "regions": [r.to_dict() for r in regions],
    }
    lines = [
        f"first   {ch1}  C={format_value(capacity(ch1))}",
        f"second  {ch2}  C={format_value(capacity(ch2))}",
        "",
        table(summary),
    ]

    if args.bound == "all":
        report = equivalence_report(ch1, ch2)
        record["equivalence"] = report.to_dict()
        flags = "  ".join(
            f"({k}) {'yes' if v else 'no'}" for k, v in report.predicates.items()
        )
        lines += ["", f"statements  {flags}"]
        if report.borderline:
            lines.append("some gaps sit close to their thresholds")

    emit(args, record, "\n".join(lines))
    return 0
