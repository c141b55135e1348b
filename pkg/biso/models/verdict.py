from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Tuple

Interval = Tuple[float, float]


class VerdictKind(Enum):
    FIRST = "FirstDominates"
    SECOND = "SecondDominates"
    EQUIVALENT = "Equivalent"
    INCOMPARABLE = "Incomparable"


class Relation(Enum):
    MORE_CAPABLE = "more_capable"
    ESSENTIALLY_LESS_NOISY = "essentially_less_noisy"


class Method(Enum):
    LORENZ_SUFFICIENT = "LorenzSufficient"
    NUMERIC_GRID = "NumericGrid"
    DEGRADATION = "Degradation"


_KIND_NAMES = {
    (Relation.MORE_CAPABLE, VerdictKind.FIRST): "FirstMoreCapable",
    (Relation.MORE_CAPABLE, VerdictKind.SECOND): "SecondMoreCapable",
    (Relation.ESSENTIALLY_LESS_NOISY, VerdictKind.FIRST): "FirstEssentiallyLessNoisy",
    (Relation.ESSENTIALLY_LESS_NOISY, VerdictKind.SECOND): "SecondEssentiallyLessNoisy",
}


@dataclass
class Witness:
    bias: float
    margin: float

    def to_dict(self) -> dict:
        return {"bias": self.bias, "margin": self.margin}


@dataclass
class ComparabilityVerdict:
    """
    Outcome of comparing two channels under one partial order.

    For the more-capable order the witnesses are input biases x with
    I(X;Y1) - I(X;Y2) above +strict_margin (pro) or below -strict_margin
    (con). For the essentially-less-noisy order they are BSC auxiliary
    parameters s with I(U;Y1) - I(U;Y2) beyond the same margins.
    """

    kind: VerdictKind
    relation: Relation = Relation.MORE_CAPABLE
    method: Method = Method.NUMERIC_GRID
    witness_pro: Optional[Witness] = None
    witness_con: Optional[Witness] = None
    min_gap: float = 0.0
    max_gap: float = 0.0
    evaluations: int = 0

    @property
    def name(self) -> str:
        return _KIND_NAMES.get((self.relation, self.kind), self.kind.value)

    @property
    def first_dominates(self) -> bool:
        return self.kind in (VerdictKind.FIRST, VerdictKind.EQUIVALENT)

    @property
    def comparable(self) -> bool:
        return self.kind != VerdictKind.INCOMPARABLE

    def to_dict(self) -> dict:
        res = {
            "kind": self.name,
            "relation": self.relation.value,
            "method": self.method.value,
            "min_gap": self.min_gap,
            "max_gap": self.max_gap,
        }
        if self.witness_pro is not None:
            res["witness_pro"] = self.witness_pro.to_dict()
        if self.witness_con is not None:
            res["witness_con"] = self.witness_con.to_dict()
        return res


@dataclass
class CrossingSets:
    """Grid-resolved I = {f1 > f2} and J = {f1 < f2} inside [0, 1/2]."""

    i_set: List[Interval] = field(default_factory=list)
    j_set: List[Interval] = field(default_factory=list)

    @property
    def both_nonempty(self) -> bool:
        return bool(self.i_set) and bool(self.j_set)

    def to_dict(self) -> dict:
        return {
            "I": [list(iv) for iv in self.i_set],
            "J": [list(iv) for iv in self.j_set],
        }


@dataclass
class ChainCheck:
    claim: str
    relation: Relation
    method: Method
    passed: bool
    worst_gap: float

    def to_dict(self) -> dict:
        return {
            "claim": self.claim,
            "relation": self.relation.value,
            "method": self.method.value,
            "passed": self.passed,
            "worst_gap": self.worst_gap,
        }


@dataclass
class ChainReport:
    capacities: Tuple[float, float, float]
    checks: List[ChainCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "capacities": list(self.capacities),
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
        }
