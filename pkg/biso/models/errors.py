from typing import Optional, Tuple


class BisoError(Exception):
    """Base class of every error raised by biso."""


class DomainError(BisoError, ValueError):
    """An argument lies outside the domain of the operation."""


class NotStochastic(DomainError):
    """A transition row is not a probability vector."""


class NotSymmetric(DomainError):
    """No output involution maps one transition row onto the other."""


class CapacityMismatch(BisoError):
    """An operation that needs equal capacities received unequal ones."""

    def __init__(self, c1: float, c2: float, eps: float):
        self.c1 = c1
        self.c2 = c2
        self.eps = eps
        super().__init__(
            f"capacities differ: {c1:.12g} vs {c2:.12g} (|gap| > {eps:g})"
        )


class PreconditionError(BisoError):
    """The inputs do not satisfy the precondition of an analysis."""


class UndecidedOrdering(BisoError):
    """
    The gap scan leaves an excursion between abs_eps and strict_margin:
    too large for dominance, too small to witness a crossing.
    """

    def __init__(
        self,
        ch1: str,
        ch2: str,
        lo: Tuple[float, float],
        hi: Tuple[float, float],
    ):
        self.ch1 = ch1
        self.ch2 = ch2
        (self.x_min, self.min_gap), (self.x_max, self.max_gap) = lo, hi
        super().__init__(
            f"{ch1} vs {ch2}: gap ranges over [{self.min_gap:.3g}, {self.max_gap:.3g}] "
            f"(at x={self.x_min:.6g} and x={self.x_max:.6g}), "
            "neither dominance nor a crossing is established"
        )

    @property
    def excursion(self) -> float:
        """The smaller of the two excursions, the one inside the margin band."""
        return min(self.max_gap, -self.min_gap)


class EquivalenceViolation(BisoError):
    """The five equal-capacity statements disagree."""

    def __init__(self, predicates: dict):
        self.predicates = predicates
        flags = ", ".join(f"{k}={v}" for k, v in predicates.items())
        super().__init__(f"equivalent predicates disagree: {flags}")


class SpecError(BisoError):
    """A channel spec file could not be parsed or validated."""

    def __init__(
        self,
        message: str,
        *,
        source: Optional[str] = None,
        line: Optional[int] = None,
        field: Optional[str] = None,
    ):
        self.source = source
        self.line = line
        self.field = field
        where = source or "<spec>"
        if line is not None:
            where += f":{line}"
        if field:
            where += f" [{field}]"
        super().__init__(f"{where}: {message}")
