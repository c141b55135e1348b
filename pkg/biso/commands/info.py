import argparse

from biso.commands.common import emit, read_channel, table
from biso.compute.export import curve_frame, pairs_frame, write_csv
from biso.models.channel import capacity, raw_output_count
from biso.models.lorenz import biso_curve
from biso.utils.roundit import format_value


def register(subparsers) -> None:
    parser = subparsers.add_parser(
        "info", help="capacity, output pairs, BISO partition and Lorenz curve"
    )
    parser.add_argument("spec", help="channel spec file, or @name for a bundled one")
    parser.add_argument("--csv", metavar="PATH", help="write (t, f, F) to a CSV file")
    parser.set_defaults(handler=cmd_info)


def cmd_info(args: argparse.Namespace) -> int:
    ch, _ = read_channel(args.spec)
    c = capacity(ch)
    pairs = pairs_frame(ch)
    curve = curve_frame(ch)
    step = biso_curve(ch)

    if args.csv:
        write_csv(curve, args.csv)

    record = {
        "channel": str(ch),
        "capacity": c,
        "outputs": raw_output_count(ch),
        "pairs": pairs.to_dict(orient="records"),
        "partition": step.breakpoints,
        "lorenz": curve.to_dict(orient="list"),
    }
    text = "\n".join(
        [
            f"channel   {ch}",
            f"capacity  {format_value(c)}",
            f"outputs   {raw_output_count(ch)}",
            "",
            table(pairs),
            "",
            "partition " + " ".join(format_value(t) for t in step.breakpoints),
            "",
            table(curve),
        ]
    )
    emit(args, record, text)
    return 0
