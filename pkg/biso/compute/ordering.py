"""
More-capable and essentially-less-noisy decisions for BISO channels.

The Lorenz test is a sufficient condition only; the numeric scan decides
every pair but is a grid procedure, not a proof.
"""

import logging
from typing import Callable, List, Optional, Tuple

import numpy as np

from biso import config
from biso.models.channel import (
    BisoChannel,
    bec,
    bec_with_capacity,
    bsc,
    bsc_with_capacity,
    capacity,
    degrade_erase,
    degrade_flip,
    f_value,
    mutual_info,
    require_equal_capacity,
)
from biso.models.errors import CapacityMismatch, DomainError, UndecidedOrdering
from biso.models.lorenz import dominates, lorenz
from biso.models.tolerance import Tolerance
from biso.models.verdict import (
    ChainCheck,
    ChainReport,
    ComparabilityVerdict,
    CrossingSets,
    Interval,
    Method,
    Relation,
    VerdictKind,
    Witness,
)

_logger = logging.getLogger(__name__)

# local extrema refined per scan, worst first
_MAX_REFINED = 16


def more_capable_sufficient(
    ch1: BisoChannel, ch2: BisoChannel, tol: Optional[Tolerance] = None
) -> Optional[bool]:
    """
    True if Lorenz(ch1) <= Lorenz(ch2) (ch1 more capable), False for the
    reverse domination, None when the curves cross.
    """
    tol = tol or config.tolerance
    require_equal_capacity(capacity(ch1), capacity(ch2), tol)
    f1, f2 = lorenz(ch1, tol), lorenz(ch2, tol)
    if dominates(f1, f2, tol=tol):
        return True
    if dominates(f2, f1, tol=tol):
        return False
    _logger.debug("Lorenz curves of %s and %s cross", ch1, ch2)
    return None


def _trisect(
    fun: Callable[[float], float], lo: float, hi: float, depth: int, maximize: bool
) -> Tuple[float, float, int]:
    sign = 1.0 if maximize else -1.0
    evaluations = 0
    for _ in range(depth):
        m1 = lo + (hi - lo) / 3.0
        m2 = hi - (hi - lo) / 3.0
        if sign * fun(m1) < sign * fun(m2):
            lo = m1
        else:
            hi = m2
        evaluations += 2
    x = 0.5 * (lo + hi)
    return x, fun(x), evaluations + 1


def _local_extrema(values: np.ndarray, maximize: bool) -> List[int]:
    v = values if maximize else -values
    idx = [
        i
        for i in range(1, len(v) - 1)
        if v[i] >= v[i - 1] and v[i] >= v[i + 1]
    ]
    idx.sort(key=lambda i: -v[i])
    return idx[:_MAX_REFINED]


def _scan(
    gap: Callable[[np.ndarray], np.ndarray],
    grid_n: int,
    depth: int,
) -> Tuple[Tuple[float, float], Tuple[float, float], int]:
    """
    Extremes of ``gap`` over [0, 1/2]: a uniform grid, then trisection in
    the two cells around every local extremum. Sign changes of a smooth gap
    are bracketed by such extrema.
    """
    grid = np.linspace(0.0, 0.5, grid_n)
    values = np.asarray(gap(grid), dtype=float)
    evaluations = grid_n

    def scalar(x: float) -> float:
        return float(gap(np.array([x]))[0])

    i_min = int(np.argmin(values))
    i_max = int(np.argmax(values))
    best_min = (float(grid[i_min]), float(values[i_min]))
    best_max = (float(grid[i_max]), float(values[i_max]))
    for maximize in (False, True):
        for i in _local_extrema(values, maximize):
            x, v, n = _trisect(scalar, grid[i - 1], grid[i + 1], depth, maximize)
            evaluations += n
            if maximize and v > best_max[1]:
                best_max = (x, v)
            if not maximize and v < best_min[1]:
                best_min = (x, v)
    return best_min, best_max, evaluations


def _classify(
    ch1: BisoChannel,
    ch2: BisoChannel,
    best_min: Tuple[float, float],
    best_max: Tuple[float, float],
    tol: Tolerance,
) -> Tuple[VerdictKind, Optional[Witness], Optional[Witness]]:
    (x_min, lo), (x_max, hi) = best_min, best_max
    pro = Witness(bias=x_max, margin=hi) if hi > tol.strict_margin else None
    con = Witness(bias=x_min, margin=lo) if lo < -tol.strict_margin else None
    if max(abs(lo), abs(hi)) <= tol.abs_eps:
        return VerdictKind.EQUIVALENT, None, None
    if lo >= -tol.abs_eps:
        return VerdictKind.FIRST, pro, None
    if hi <= tol.abs_eps:
        return VerdictKind.SECOND, None, con
    if pro is not None and con is not None:
        return VerdictKind.INCOMPARABLE, pro, con
    # both signs beyond abs_eps, one of them inside the strict margin
    raise UndecidedOrdering(str(ch1), str(ch2), best_min, best_max)


def more_capable_numeric(
    ch1: BisoChannel,
    ch2: BisoChannel,
    grid_n: Optional[int] = None,
    tol: Optional[Tolerance] = None,
) -> ComparabilityVerdict:
    """
    Scan D(x) = I(X;Y1) - I(X;Y2) over input biases x in [0, 1/2].

    FirstDominates needs min D >= -abs_eps, Incomparable needs excursions
    beyond strict_margin on both sides. A range that fits neither raises
    UndecidedOrdering.
    """
    tol = tol or config.tolerance
    grid_n = grid_n or config.grid_n
    if grid_n < 64:
        raise DomainError(f"grid_n must be at least 64, got {grid_n}")

    def gap(x: np.ndarray) -> np.ndarray:
        return np.asarray(mutual_info(ch1, x)) - np.asarray(mutual_info(ch2, x))

    best_min, best_max, evaluations = _scan(gap, grid_n, config.refine_depth)
    kind, pro, con = _classify(ch1, ch2, best_min, best_max, tol)
    _logger.debug(
        "more-capable scan %s vs %s: gap in [%.3g, %.3g] -> %s",
        ch1,
        ch2,
        best_min[1],
        best_max[1],
        kind.value,
    )
    return ComparabilityVerdict(
        kind=kind,
        relation=Relation.MORE_CAPABLE,
        method=Method.NUMERIC_GRID,
        witness_pro=pro,
        witness_con=con,
        min_gap=best_min[1],
        max_gap=best_max[1],
        evaluations=evaluations,
    )


def more_capable(
    ch1: BisoChannel,
    ch2: BisoChannel,
    grid_n: Optional[int] = None,
    tol: Optional[Tolerance] = None,
) -> ComparabilityVerdict:
    """
    Numeric verdict, tagged LorenzSufficient when the Lorenz test applies
    (equal capacities) and agrees with the scan.
    """
    tol = tol or config.tolerance
    verdict = more_capable_numeric(ch1, ch2, grid_n, tol)
    try:
        sufficient = more_capable_sufficient(ch1, ch2, tol)
    except CapacityMismatch:
        return verdict
    if sufficient is True and verdict.kind in (VerdictKind.FIRST, VerdictKind.EQUIVALENT):
        verdict.method = Method.LORENZ_SUFFICIENT
    elif sufficient is False and verdict.kind in (
        VerdictKind.SECOND,
        VerdictKind.EQUIVALENT,
    ):
        verdict.method = Method.LORENZ_SUFFICIENT
    elif sufficient is not None:
        _logger.warning(
            "Lorenz test (%s) and numeric scan (%s) disagree for %s vs %s",
            sufficient,
            verdict.kind.value,
            ch1,
            ch2,
        )
    return verdict


def essentially_less_noisy_equal_cap(
    ch1: BisoChannel,
    ch2: BisoChannel,
    grid_n: Optional[int] = None,
    tol: Optional[Tolerance] = None,
) -> ComparabilityVerdict:
    """
    For equal-capacity BISO channels ch1 is essentially less noisy than ch2
    iff ch2 is more capable than ch1. The witnesses are BSC auxiliary
    parameters s, where f1(s) - f2(s) equals the swapped mutual-information
    gap.
    """
    tol = tol or config.tolerance
    require_equal_capacity(capacity(ch1), capacity(ch2), tol)
    verdict = more_capable(ch2, ch1, grid_n, tol)
    verdict.relation = Relation.ESSENTIALLY_LESS_NOISY
    return verdict


def _intervals(grid: np.ndarray, mask: np.ndarray) -> List[Interval]:
    res = []
    start = None
    for i, flag in enumerate(mask):
        if flag and start is None:
            start = i
        if not flag and start is not None:
            res.append((float(grid[start]), float(grid[i - 1])))
            start = None
    if start is not None:
        res.append((float(grid[start]), float(grid[-1])))
    return res


def crossing_sets(
    ch1: BisoChannel,
    ch2: BisoChannel,
    grid_n: Optional[int] = None,
    tol: Optional[Tolerance] = None,
) -> CrossingSets:
    """I = {s : f1(s) - f2(s) > strict_margin} and J the reverse, on a grid."""
    tol = tol or config.tolerance
    grid_n = grid_n or config.grid_n
    s = np.linspace(0.0, 0.5, grid_n)
    d = np.asarray(f_value(ch1, s)) - np.asarray(f_value(ch2, s))
    return CrossingSets(
        i_set=_intervals(s, d > tol.strict_margin),
        j_set=_intervals(s, d < -tol.strict_margin),
    )


def _pair_gap(a: BisoChannel, b: BisoChannel) -> float:
    pa = np.array(sorted(a.pairs))
    pb = np.array(sorted(b.pairs))
    if pa.shape != pb.shape:
        return float("inf")
    return float(np.max(np.abs(pa - pb)))


def _bsc_degradation(c_low: float, c_high: float, tol: Tolerance) -> float:
    """
    BSC(c_low) = BSC(c_high) followed by BSC(q); returns the largest entry
    mismatch between the composition and the target.
    """
    p_low = bsc_with_capacity(c_low, tol).pairs[0][1]
    p_high = bsc_with_capacity(c_high, tol).pairs[0][1]
    denominator = 1.0 - 2.0 * p_high
    q = 0.0 if denominator <= tol.root_eps else (p_low - p_high) / denominator
    return _pair_gap(degrade_flip(bsc(p_high), q), bsc(p_low))


def _bec_degradation(c_low: float, c_high: float, tol: Tolerance) -> float:
    """BEC(c_low) = BEC(c_high) followed by an erasure of probability q."""
    e_low, e_high = 1.0 - c_low, 1.0 - c_high
    denominator = 1.0 - e_high
    q = 0.0 if denominator <= tol.root_eps else (e_low - e_high) / denominator
    return _pair_gap(degrade_erase(bec(e_high), q), bec(e_low))


def check_chain(
    c1: float,
    c3: float,
    ch: BisoChannel,
    grid_n: Optional[int] = None,
    tol: Optional[Tolerance] = None,
) -> ChainReport:
    """
    Verify, for C1 <= C2 = capacity(ch) <= C3,
    BEC(C3) >> F >> BSC(C1) (more capable) and
    BSC(C3) >= F >= BEC(C1) (essentially less noisy).

    Equal-capacity links go through Lorenz and the numeric scans; the
    capacity-lowering links are certified by explicit degradation.
    """
    tol = tol or config.tolerance
    c2 = capacity(ch)
    if not (c1 <= c2 + tol.abs_eps and c2 <= c3 + tol.abs_eps):
        raise DomainError(f"capacities must satisfy C1 <= C2 <= C3, got {c1}, {c2}, {c3}")
    c1, c3 = min(c1, c2), max(c3, c2)

    bec2 = bec_with_capacity(c2)
    bsc2 = bsc_with_capacity(c2, tol)
    checks: List[ChainCheck] = []

    def scan(claim: str, relation: Relation, verdict: ComparabilityVerdict):
        checks.append(
            ChainCheck(
                claim=claim,
                relation=relation,
                method=verdict.method,
                passed=verdict.min_gap >= -tol.abs_eps,
                worst_gap=verdict.min_gap,
            )
        )

    def degradation(claim: str, relation: Relation, mismatch: float):
        checks.append(
            ChainCheck(
                claim=claim,
                relation=relation,
                method=Method.DEGRADATION,
                passed=mismatch <= tol.abs_eps,
                worst_gap=-mismatch,
            )
        )

    mc = Relation.MORE_CAPABLE
    eln = Relation.ESSENTIALLY_LESS_NOISY
    degradation("BEC(C3) >> BEC(C2)", mc, _bec_degradation(c2, c3, tol))
    scan("BEC(C2) >> F", mc, more_capable(bec2, ch, grid_n, tol))
    scan("F >> BSC(C2)", mc, more_capable(ch, bsc2, grid_n, tol))
    degradation("BSC(C2) >> BSC(C1)", mc, _bsc_degradation(c1, c2, tol))
    scan("BEC(C3) >> F", mc, more_capable_numeric(bec_with_capacity(c3), ch, grid_n, tol))
    scan(
        "F >> BSC(C1)",
        mc,
        more_capable_numeric(ch, bsc_with_capacity(c1, tol), grid_n, tol),
    )

    degradation("BSC(C3) >= BSC(C2)", eln, _bsc_degradation(c2, c3, tol))
    scan("BSC(C2) >= F", eln, essentially_less_noisy_equal_cap(bsc2, ch, grid_n, tol))
    scan("F >= BEC(C2)", eln, essentially_less_noisy_equal_cap(ch, bec2, grid_n, tol))
    degradation("BEC(C2) >= BEC(C1)", eln, _bec_degradation(c1, c2, tol))

    report = ChainReport(capacities=(c1, c2, c3), checks=checks)
    for check in checks:
        if not check.passed:
            _logger.warning("chain check %s failed (gap %.3g)", check.claim, check.worst_gap)
    return report
