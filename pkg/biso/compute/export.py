import logging
from typing import Iterable, Optional

import numpy as np
import pandas as pd
import yaml

from biso import config
from biso.models.channel import BisoChannel
from biso.models.lorenz import biso_curve, lorenz
from biso.models.region import RateRegion
from biso.models.tolerance import Tolerance

_logger = logging.getLogger(__name__)


def pairs_frame(ch: BisoChannel) -> pd.DataFrame:
    """One row per output pair: masses, folded crossovers and entropies."""
    return pd.DataFrame(
        {
            "p_pos": [a for a, _ in ch.pairs],
            "p_neg": [b for _, b in ch.pairs],
            "mass": ch.masses,
            "crossover": ch.crossovers,
            "entropy": ch.entropies,
        }
    )


def curve_frame(ch: BisoChannel, tol: Optional[Tolerance] = None) -> pd.DataFrame:
    """(t, f(t), F(t)) at the breakpoints of the BISO partition."""
    step = biso_curve(ch, tol)
    curve = lorenz(ch, tol)
    return pd.DataFrame(
        {
            "t": step.breakpoints,
            "f": step(step.breakpoints),
            "F": curve.cumulative,
        }
    )


def region_frame(region: RateRegion) -> pd.DataFrame:
    df = pd.DataFrame(region.frontier, columns=["R1", "R2"])
    df.insert(0, "bound", region.bound)
    df["sum"] = df["R1"] + df["R2"]
    if region.generators:
        df = pd.concat([df, pd.DataFrame(region.generators)], axis=1)
    return df


def regions_frame(regions: Iterable[RateRegion]) -> pd.DataFrame:
    return pd.concat([region_frame(r) for r in regions], ignore_index=True)


def write_csv(df: pd.DataFrame, path: str) -> None:
    df.to_csv(path, index=False, float_format=config.csv_float_format)
    _logger.info("wrote %d rows to %s", len(df), path)


def _plain(value):
    """numpy scalars and arrays to plain Python for the YAML dumper."""
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return _plain(value.tolist())
    if isinstance(value, np.generic):
        return value.item()
    return value


def dump_record(record: dict) -> str:
    return yaml.safe_dump(_plain(record), sort_keys=False)
