import argparse
import logging
from typing import Tuple

import pandas as pd
from pydantic import ValidationError

from biso import config
from biso.compute.export import dump_record
from biso.dto.channel_spec import (
    BecSpec,
    BscSpec,
    ChannelSpec,
    channel_from_spec,
    load_channel_spec,
)
from biso.models.channel import (
    BisoChannel,
    bec_with_capacity,
    bsc_with_capacity,
    capacity,
)
from biso.models.errors import DomainError, PreconditionError
from biso.utils.roundit import format_value

_logger = logging.getLogger(__name__)


def apply_overrides(args: argparse.Namespace) -> None:
    """Push --tol, --margin, --grid and --seed into the shared settings."""
    if args.tol is not None:
        config.abs_eps = args.tol
    if args.margin is not None:
        config.strict_margin = args.margin
    if args.grid is not None:
        config.grid_n = args.grid
        config.region_grid_n = args.grid
    if args.seed is not None:
        config.seed = args.seed
    try:
        config.tolerance
    except ValidationError as e:
        raise DomainError(e.errors()[0]["msg"])
    if config.grid_n < 64:
        raise DomainError(f"--grid must be at least 64, got {config.grid_n}")


def read_channel(path: str) -> Tuple[BisoChannel, ChannelSpec]:
    spec = load_channel_spec(path)
    return channel_from_spec(spec, path), spec


def equalize_to(ch: BisoChannel, spec: ChannelSpec, target: float) -> BisoChannel:
    """Rescale a bsc or bec spec to ``target`` capacity inside its family."""
    if isinstance(spec, BscSpec):
        res = bsc_with_capacity(target)
    elif isinstance(spec, BecSpec):
        res = bec_with_capacity(target)
    else:
        raise PreconditionError(
            f"--equalize only rescales bsc and bec specs, {ch} is a {spec.type} spec"
        )
    _logger.info("rescaled %s from C=%.12g to C=%.12g", ch, capacity(ch), target)
    return res


def table(df: pd.DataFrame) -> str:
    return df.to_string(index=False, float_format=format_value)


def emit(args: argparse.Namespace, record: dict, text: str) -> None:
    if args.format == "yaml":
        print(dump_record(record), end="")
    else:
        print(text)
