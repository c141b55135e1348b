import argparse
import logging
from typing import List

from biso.commands.common import emit, equalize_to, read_channel
from biso.compute.ordering import (
    crossing_sets,
    essentially_less_noisy_equal_cap,
    more_capable,
    more_capable_sufficient,
)
from biso.models.channel import capacity, match_capacities
from biso.models.errors import CapacityMismatch
from biso.models.verdict import ComparabilityVerdict, Interval
from biso.utils.roundit import format_value

_logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser(
        "compare", help="more-capable and essentially-less-noisy verdicts"
    )
    parser.add_argument("spec1")
    parser.add_argument("spec2")
    parser.add_argument(
        "--equalize",
        action="store_true",
        help="rescale the second channel (bsc or bec) to the first one's capacity",
    )
    parser.set_defaults(handler=cmd_compare)


def _verdict_lines(title: str, verdict: ComparabilityVerdict) -> List[str]:
    lines = [
        f"{title:<22}{verdict.name} ({verdict.method.value})",
        f"{'':<22}gap in [{format_value(verdict.min_gap)}, "
        f"{format_value(verdict.max_gap)}]",
    ]
    for tag, w in (("pro", verdict.witness_pro), ("con", verdict.witness_con)):
        if w is not None:
            lines.append(
                f"{'':<22}witness {tag}: x={format_value(w.bias)} "
                f"gap={format_value(w.margin)}"
            )
    return lines


def _intervals_text(intervals: List[Interval]) -> str:
    if not intervals:
        return "{}"
    return " U ".join(
        f"[{format_value(lo)}, {format_value(hi)}]" for lo, hi in intervals
    )


def cmd_compare(args: argparse.Namespace) -> int:
    ch1, _ = read_channel(args.spec1)
    ch2, spec2 = read_channel(args.spec2)
    if args.equalize:
        ch2 = equalize_to(ch2, spec2, capacity(ch1))
    c1, c2 = capacity(ch1), capacity(ch2)

    verdict = more_capable(ch1, ch2)
    record = {
        "first": str(ch1),
        "second": str(ch2),
        "capacities": [c1, c2],
        "more_capable": verdict.to_dict(),
    }
    lines = [
        f"first   {ch1}  C={format_value(c1)}",
        f"second  {ch2}  C={format_value(c2)}",
        "",
        *_verdict_lines("more capable", verdict),
    ]

    try:
        m1, m2, gap = match_capacities(ch1, ch2)
    except CapacityMismatch as e:
        _logger.info("skipping equal-capacity analyses: %s", e)
        lines.append("capacities differ: no Lorenz test, ELN verdict or I/J sets")
        emit(args, record, "\n".join(lines))
        return 0

    sufficient = more_capable_sufficient(m1, m2)
    eln = essentially_less_noisy_equal_cap(m1, m2)
    sets = crossing_sets(m1, m2)
    record.update(
        {
            "capacity_gap": gap,
            "lorenz_sufficient": sufficient,
            "essentially_less_noisy": eln.to_dict(),
            "crossing": sets.to_dict(),
        }
    )
    lorenz_text = {True: "first dominates", False: "second dominates", None: "curves cross"}
    lines += [
        f"{'lorenz test':<22}{lorenz_text[sufficient]}",
        *_verdict_lines("essentially less noisy", eln),
        f"{'I = {f1 > f2}':<22}{_intervals_text(sets.i_set)}",
        f"{'J = {f1 < f2}':<22}{_intervals_text(sets.j_set)}",
    ]
    emit(args, record, "\n".join(lines))
    return 0
