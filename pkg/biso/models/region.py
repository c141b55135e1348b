from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from biso.models.channel import BisoChannel, f_value


@dataclass(frozen=True, eq=False)
class FProfile:
    """
    f(s) = I(U;Y) for U -> X a BSC(s) with uniform X, sampled on a uniform
    grid over [0, 1/2]. The channel is kept so off-grid points can be
    evaluated exactly.
    """

    channel: BisoChannel
    grid: np.ndarray
    values: np.ndarray
    capacity: float

    @property
    def label(self) -> str:
        return str(self.channel)

    def at(self, s):
        return f_value(self.channel, np.minimum(s, 1.0 - np.asarray(s)))


@dataclass
class RateRegion:
    bound: str
    frontier: np.ndarray
    max_sum_rate: float
    generators: List[Dict[str, float]] = field(default_factory=list)

    @property
    def corners(self) -> Tuple[Tuple[float, float], Tuple[float, float]]:
        """The two single-user points (max R1, 0) side and (0, max R2) side."""
        r1 = self.frontier[:, 0]
        r2 = self.frontier[:, 1]
        return (float(r1.max()), float(r2[np.argmax(r1)])), (
            float(r1[np.argmax(r2)]),
            float(r2.max()),
        )

    def to_dict(self) -> dict:
        return {
            "bound": self.bound,
            "max_sum_rate": self.max_sum_rate,
            "frontier_points": len(self.frontier),
        }


@dataclass
class EquivalenceReport:
    """
    The five equivalent statements for an equal-capacity pair:
    (a) the channels are not more-capable comparable,
    (b) TD is strictly inside OB,
    (c) some s1 in I and s2 in J have f1(s1) + f2(s2) > C,
    (d) TD is strictly inside RTD,
    (e) RTD is strictly inside OB.
    """

    capacity: float
    capacity_gap: float
    predicates: Dict[str, bool]
    td_sum: float
    rtd_sum: float
    ob_sum: float
    witness: Optional[Tuple[float, float]] = None
    excess: float = 0.0
    borderline: bool = False

    @property
    def consistent(self) -> bool:
        return len(set(self.predicates.values())) == 1

    @property
    def incomparable(self) -> bool:
        return self.predicates["a"]

    def to_dict(self) -> dict:
        res = {
            "capacity": self.capacity,
            "capacity_gap": self.capacity_gap,
            "predicates": dict(self.predicates),
            "consistent": self.consistent,
            "borderline": self.borderline,
            "sum_rates": {"td": self.td_sum, "rtd": self.rtd_sum, "ob": self.ob_sum},
            "excess": self.excess,
        }
        if self.witness is not None:
            res["witness"] = {"s1": self.witness[0], "s2": self.witness[1]}
        return res


@dataclass
class SumRates:
    td: float
    rtd: float
    ob: float

    def to_dict(self) -> dict:
        return {"td": self.td, "rtd": self.rtd, "ob": self.ob}


@dataclass
class BetterReceiverReport:
    capacity: float
    original: SumRates
    replaced: SumRates
    replacement_label: str = ""

    @property
    def shrinks(self) -> bool:
        return self.replaced.rtd < self.original.rtd

    def to_dict(self) -> dict:
        return {
            "capacity": self.capacity,
            "replacement": self.replacement_label,
            "original": self.original.to_dict(),
            "replaced": self.replaced.to_dict(),
            "shrinks": self.shrinks,
        }
