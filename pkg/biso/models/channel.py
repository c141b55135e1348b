"""
Canonical binary-input symmetric-output channels.

A BISO channel is stored as its list of output pairs ``(p_k, p_-k)`` where
``p_k = P(Y=k|X=0) = P(Y=-k|X=1)``. Self-symmetric outputs (the zero symbol)
are merged and split into one half-mass pair placed last.
"""

import logging
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from biso import config
from biso.models.binmath import (
    ArrayLike,
    binary_entropy_inverse,
    entropy_array,
    fold,
)
from biso.models.errors import (
    CapacityMismatch,
    DomainError,
    NotStochastic,
    NotSymmetric,
)
from biso.models.tolerance import Tolerance

_logger = logging.getLogger(__name__)

Pair = Tuple[float, float]


@dataclass(frozen=True)
class InputBias:
    """P(X = 0), folded onto [0, 1/2] by the output symmetry."""

    x: float

    def __post_init__(self):
        if not 0.0 <= self.x <= 1.0:
            raise DomainError(f"input bias must lie in [0, 1], got {self.x}")
        if self.x > 0.5:
            object.__setattr__(self, "x", 1.0 - self.x)

    def __float__(self) -> float:
        return self.x


BiasLike = Union[InputBias, float, np.ndarray]


def _bias_array(bias: BiasLike) -> np.ndarray:
    if isinstance(bias, InputBias):
        return np.asarray(bias.x, dtype=float)
    arr = np.asarray(bias, dtype=float)
    if np.any(arr < 0.0) or np.any(arr > 1.0):
        raise DomainError(f"input bias must lie in [0, 1], got {bias}")
    return np.minimum(arr, 1.0 - arr)


@dataclass(frozen=True)
class BisoChannel:
    pairs: Tuple[Pair, ...]
    label: str = ""
    zero_mass: float = 0.0
    raw_outputs: int = field(default=0, compare=False)

    def __post_init__(self):
        tol = config.tolerance
        pairs = tuple((float(a), float(b)) for a, b in self.pairs)
        for a, b in pairs:
            if a < -tol.abs_eps or b < -tol.abs_eps:
                raise NotStochastic(f"negative transition probability in {pairs}")
        pairs = tuple((max(a, 0.0), max(b, 0.0)) for a, b in pairs)
        pairs = tuple(p for p in pairs if p[0] + p[1] > 0.0)
        total = sum(a + b for a, b in pairs)
        if not pairs or abs(total - 1.0) > tol.abs_eps:
            raise NotStochastic(f"pair masses sum to {total}, expected 1")
        pairs = tuple((a / total, b / total) for a, b in pairs)
        object.__setattr__(self, "pairs", pairs)
        if self.raw_outputs <= 0:
            object.__setattr__(self, "raw_outputs", _count_outputs(pairs, self.zero_mass))

    @property
    def masses(self) -> np.ndarray:
        """xi_k = p_k + p_-k."""
        return np.array([a + b for a, b in self.pairs])

    @property
    def crossovers(self) -> np.ndarray:
        """h^{-1}(h(p_k / xi_k)): the per-pair crossover folded onto [0, 1/2]."""
        return fold(np.array([a / (a + b) for a, b in self.pairs]))

    @property
    def entropies(self) -> np.ndarray:
        """h(p_k / xi_k), one per pair."""
        return entropy_array(self.crossovers)

    def to_rows(self) -> np.ndarray:
        """The 2 x n transition matrix over outputs (+1, ..., +l, -1, ..., -l)."""
        pos = np.array([a for a, _ in self.pairs])
        neg = np.array([b for _, b in self.pairs])
        return np.vstack([np.concatenate([pos, neg]), np.concatenate([neg, pos])])

    def with_label(self, label: str) -> "BisoChannel":
        return BisoChannel(
            pairs=self.pairs,
            label=label,
            zero_mass=self.zero_mass,
            raw_outputs=self.raw_outputs,
        )

    def __str__(self) -> str:
        return self.label or f"BISO{list(self.pairs)}"


def _count_outputs(pairs: Sequence[Pair], zero_mass: float) -> int:
    count = 2 * len(pairs)
    if zero_mass > 0.0:
        # the split zero pair stands for a single output symbol
        count -= 1
    return count


def from_pairs(
    pairs: Iterable[Sequence[float]], zero: float = 0.0, label: str = ""
) -> BisoChannel:
    """Build a channel from explicit pairs plus an optional zero-symbol mass."""
    pairs = [(float(a), float(b)) for a, b in pairs]
    pairs = [p for p in pairs if p[0] + p[1] > 0.0]
    if zero < 0.0:
        raise NotStochastic(f"zero-symbol mass must be nonnegative, got {zero}")
    if zero > 0.0:
        pairs.append((zero / 2.0, zero / 2.0))
    return BisoChannel(pairs=tuple(pairs), label=label, zero_mass=float(zero))


def from_rows(
    row0: Sequence[float],
    row1: Sequence[float],
    label: str = "",
    tol: Optional[Tolerance] = None,
) -> BisoChannel:
    """
    Canonicalize a 2-row transition matrix.

    Each output column (row0[y], row1[y]) is greedily matched with an unused
    column holding the swapped values. Self-symmetric columns are the fixed
    points of the involution; they are merged into the zero symbol.
    """
    tol = tol or config.tolerance
    r0 = np.asarray(row0, dtype=float)
    r1 = np.asarray(row1, dtype=float)
    if r0.ndim != 1 or r0.shape != r1.shape:
        raise NotStochastic("rows must be 1-D vectors of equal length")
    for name, row in (("row0", r0), ("row1", r1)):
        if np.any(row < -tol.abs_eps):
            raise NotStochastic(f"{name} has a negative entry")
        if abs(row.sum() - 1.0) > tol.abs_eps:
            raise NotStochastic(f"{name} sums to {row.sum()}, expected 1")

    live = [y for y in range(len(r0)) if r0[y] + r1[y] > tol.abs_eps]
    used = set()
    pairs: List[Pair] = []
    zero = 0.0
    for y in live:
        if y in used:
            continue
        used.add(y)
        if abs(r0[y] - r1[y]) <= tol.abs_eps:
            zero += 0.5 * (r0[y] + r1[y])
            continue
        candidates = [
            z
            for z in live
            if z not in used
            and abs(r0[z] - r1[y]) <= tol.abs_eps
            and abs(r1[z] - r0[y]) <= tol.abs_eps
        ]
        if not candidates:
            raise NotSymmetric(
                f"output {y} with column ({r0[y]:g}, {r1[y]:g}) has no mirror output"
            )
        z = min(candidates, key=lambda c: abs(r0[c] - r1[y]) + abs(r1[c] - r0[y]))
        used.add(z)
        pairs.append((r0[y], r0[z]))

    raw = len(live)
    if zero > 0.0:
        pairs.append((zero / 2.0, zero / 2.0))
    _logger.debug("canonicalized %d outputs into %d pairs", raw, len(pairs))
    return BisoChannel(pairs=tuple(pairs), label=label, zero_mass=zero, raw_outputs=raw)


def bsc(p: float, label: Optional[str] = None) -> BisoChannel:
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"BSC crossover must lie in [0, 1], got {p}")
    return BisoChannel(pairs=((1.0 - p, p),), label=label or f"BSC({p:.6g})")


def bec(e: float, label: Optional[str] = None) -> BisoChannel:
    if not 0.0 <= e <= 1.0:
        raise DomainError(f"BEC erasure must lie in [0, 1], got {e}")
    return from_pairs([(1.0 - e, 0.0)], zero=e, label=label or f"BEC({e:.6g})")


def bsc_with_capacity(c: float, tol: Optional[Tolerance] = None) -> BisoChannel:
    if not 0.0 <= c <= 1.0:
        raise DomainError(f"capacity must lie in [0, 1], got {c}")
    p = binary_entropy_inverse(1.0 - c, tol)
    return bsc(p, label=f"BSC(C={c:.6g})")


def bec_with_capacity(c: float) -> BisoChannel:
    if not 0.0 <= c <= 1.0:
        raise DomainError(f"capacity must lie in [0, 1], got {c}")
    return bec(1.0 - c, label=f"BEC(C={c:.6g})")


def mutual_info(ch: BisoChannel, bias: BiasLike) -> ArrayLike:
    """
    I(X;Y) in bits for P(X=0) = x:
    sum_k xi_k h(x * h^{-1}(h_k)) - sum_k xi_k h_k.
    Vectorized over an array of biases.
    """
    x = _bias_array(bias)
    xi = ch.masses
    r = ch.crossovers
    xs = np.atleast_1d(x)[:, None]
    mixed = xs * (1.0 - r) + r * (1.0 - xs)
    value = entropy_array(mixed) @ xi - float(entropy_array(r) @ xi)
    value = np.maximum(value, 0.0)
    if np.ndim(x) == 0:
        return float(value[0])
    return value.reshape(np.shape(x))


def capacity(ch: BisoChannel) -> float:
    """C = 1 - sum_k xi_k h_k, the mutual information at the uniform input."""
    return max(0.0, 1.0 - float(ch.entropies @ ch.masses))


def f_value(ch: BisoChannel, s: BiasLike) -> ArrayLike:
    """
    I(U;Y) for U -> X a BSC(s) with uniform X, i.e. C - I(X;Y) at bias s.
    """
    value = capacity(ch) - np.asarray(mutual_info(ch, s))
    value = np.maximum(value, 0.0)
    if np.ndim(value) == 0:
        return float(value)
    return value


def degrade_flip(ch: BisoChannel, q: float) -> BisoChannel:
    """Cascade with a BSC(q) acting on the sign of the output."""
    if not 0.0 <= q <= 1.0:
        raise DomainError(f"flip probability must lie in [0, 1], got {q}")
    pairs = [((1.0 - q) * a + q * b, q * a + (1.0 - q) * b) for a, b in ch.pairs]
    return BisoChannel(
        pairs=tuple(pairs),
        label=f"{ch}>flip({q:.6g})",
        zero_mass=ch.zero_mass,
        raw_outputs=ch.raw_outputs,
    )


def degrade_erase(ch: BisoChannel, q: float) -> BisoChannel:
    """Erase the output with probability q (the erasure joins the zero symbol)."""
    if not 0.0 <= q <= 1.0:
        raise DomainError(f"erasure probability must lie in [0, 1], got {q}")
    signed = ch.pairs[:-1] if ch.zero_mass > 0.0 else ch.pairs
    pairs = [((1.0 - q) * a, (1.0 - q) * b) for a, b in signed]
    return from_pairs(
        pairs,
        zero=(1.0 - q) * ch.zero_mass + q,
        label=f"{ch}>erase({q:.6g})",
    )


def equalize_capacity(
    ch: BisoChannel,
    target: float,
    method: str = "erase",
    tol: Optional[Tolerance] = None,
) -> BisoChannel:
    """
    Degrade ``ch`` until its capacity equals ``target`` (<= capacity(ch)).

    ``erase`` scales the capacity linearly and has the closed form
    q = 1 - target / C. ``flip`` bisects on the flip probability q in
    [0, 1/2], along which the capacity decreases monotonically to 0.
    """
    tol = tol or config.tolerance
    c = capacity(ch)
    if target < -tol.abs_eps or target > c + tol.abs_eps:
        raise DomainError(f"target capacity {target} outside [0, {c}]")
    target = min(max(target, 0.0), c)
    if c - target <= tol.root_eps:
        return ch
    if method == "erase":
        return degrade_erase(ch, 1.0 - target / c)
    if method != "flip":
        raise DomainError(f"unknown equalization method {method!r}")
    lo, hi = 0.0, 0.5
    while hi - lo > tol.root_eps:
        mid = 0.5 * (lo + hi)
        if capacity(degrade_flip(ch, mid)) > target:
            lo = mid
        else:
            hi = mid
    return degrade_flip(ch, 0.5 * (lo + hi))


def random_channel(
    rng: np.random.Generator,
    n_pairs: int = 3,
    zero: bool = False,
    label: str = "",
) -> BisoChannel:
    """A random canonical channel with ``n_pairs`` signed pairs."""
    weights = rng.dirichlet(np.ones(n_pairs + (1 if zero else 0)))
    ratios = rng.uniform(0.0, 1.0, size=n_pairs)
    pairs = [(w * r, w * (1.0 - r)) for w, r in zip(weights[:n_pairs], ratios)]
    return from_pairs(pairs, zero=float(weights[-1]) if zero else 0.0, label=label)


def raw_output_count(ch: BisoChannel) -> int:
    """Size of the output alphabet before canonicalization."""
    return ch.raw_outputs


def require_equal_capacity(
    c1: float, c2: float, tol: Optional[Tolerance] = None
) -> float:
    """Return the common capacity, or raise CapacityMismatch."""
    tol = tol or config.tolerance
    if abs(c1 - c2) > tol.abs_eps:
        raise CapacityMismatch(c1, c2, tol.abs_eps)
    return 0.5 * (c1 + c2)


def match_capacities(
    ch1: BisoChannel,
    ch2: BisoChannel,
    slack: Optional[float] = None,
    tol: Optional[Tolerance] = None,
) -> Tuple[BisoChannel, BisoChannel, float]:
    """
    Make two nearly equal capacities equal by erasing the stronger channel.

    Returns both channels and the measured gap C1 - C2. Gaps up to abs_eps
    are left alone; gaps beyond ``slack`` raise CapacityMismatch.
    """
    tol = tol or config.tolerance
    slack = config.capacity_slack if slack is None else slack
    c1, c2 = capacity(ch1), capacity(ch2)
    gap = c1 - c2
    if abs(gap) <= tol.abs_eps:
        return ch1, ch2, gap
    if abs(gap) > slack:
        raise CapacityMismatch(c1, c2, slack)
    _logger.warning(
        "capacities of %s and %s differ by %.3g, erasing the stronger one", ch1, ch2, gap
    )
    if gap > 0:
        ch1 = equalize_capacity(ch1, c2, "erase", tol).with_label(ch1.label)
    else:
        ch2 = equalize_capacity(ch2, c1, "erase", tol).with_label(ch2.label)
    return ch1, ch2, gap
