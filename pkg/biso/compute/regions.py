"""
Rate regions of the two-receiver BISO broadcast channel.

Every bound is parameterized by BSC auxiliaries through the f-profiles
f_i(s) = I(U;Y_i), U -> X a BSC(s) with uniform X. For equal capacities C
the sum-rate comparisons TD / RTD (= Marton) / OB decide whether the
channels are more-capable comparable.
"""

import logging
from typing import Dict, List, Literal, Optional, Tuple

import numpy as np
from scipy.optimize import linprog, minimize

from biso import config
from biso.compute.frontier import (
    pareto_indices,
    polytope_corners,
    upper_concave_envelope,
    weighted_sum_sweep,
)
from biso.compute.ordering import more_capable_numeric
from biso.models.channel import (
    BisoChannel,
    bec_with_capacity,
    capacity,
    f_value,
    require_equal_capacity,
)
from biso.models.errors import (
    EquivalenceViolation,
    PreconditionError,
    UndecidedOrdering,
)
from biso.models.region import (
    BetterReceiverReport,
    EquivalenceReport,
    FProfile,
    RateRegion,
    SumRates,
)
from biso.models.tolerance import Tolerance
from biso.models.verdict import VerdictKind

_logger = logging.getLogger(__name__)

_HIGHS_OPTIONS = {
    "primal_feasibility_tolerance": 1e-10,
    "dual_feasibility_tolerance": 1e-10,
}

# gaps inside (_CLEAR_ZERO * abs_eps, _CLEAR_GAP * strict_margin) are not decisive
_CLEAR_ZERO = 10.0
_CLEAR_GAP = 10.0


def f_profile(ch: BisoChannel, grid_n: Optional[int] = None) -> FProfile:
    grid_n = grid_n or config.region_grid_n
    grid = np.linspace(0.0, 0.5, grid_n)
    values = np.asarray(f_value(ch, grid))
    c = capacity(ch)
    # exact endpoints
    values[0] = c
    values[-1] = 0.0
    return FProfile(channel=ch, grid=grid, values=values, capacity=c)


def _common_capacity(prof1: FProfile, prof2: FProfile, tol: Tolerance) -> float:
    return require_equal_capacity(prof1.capacity, prof2.capacity, tol)


def _generators(
    columns: Dict[str, np.ndarray], idx: np.ndarray
) -> List[Dict[str, float]]:
    return [{k: float(v[i]) for k, v in columns.items()} for i in idx]


def _region(
    bound: str, points: np.ndarray, columns: Dict[str, np.ndarray]
) -> RateRegion:
    """Frontier of a point cloud; ``columns`` hold the generator of each point."""
    front = pareto_indices(points)
    hull = front[upper_concave_envelope(points[front])]
    front = hull[pareto_indices(points[hull])]
    frontier = points[front]
    return RateRegion(
        bound=bound,
        frontier=frontier,
        max_sum_rate=float(np.max(frontier.sum(axis=1))),
        generators=_generators(columns, front),
    )


def td_region(c1: float, c2: float, grid_n: Optional[int] = None) -> RateRegion:
    """The time-division segment {(alpha C1, (1 - alpha) C2)}."""
    grid_n = grid_n or config.region_grid_n
    alpha = np.linspace(0.0, 1.0, grid_n)
    points = np.stack([alpha * c1, (1.0 - alpha) * c2], axis=1)
    front = pareto_indices(points)
    return RateRegion(
        bound="td",
        frontier=points[front],
        max_sum_rate=max(c1, c2),
        generators=[{"alpha": float(alpha[i])} for i in front],
    )


def dominant_receiver(
    ch1: BisoChannel, ch2: BisoChannel, tol: Optional[Tolerance] = None
) -> Literal[1, 2]:
    """
    The receiver that decodes the cloud center and its own layer: the more
    capable one. Incomparable and undecided pairs fall back to the larger
    capacity.
    """
    try:
        kind = more_capable_numeric(ch1, ch2, tol=tol).kind
    except UndecidedOrdering as e:
        _logger.warning("%s", e)
        kind = VerdictKind.INCOMPARABLE
    if kind in (VerdictKind.FIRST, VerdictKind.EQUIVALENT):
        return 1
    if kind == VerdictKind.SECOND:
        return 2
    res = 1 if capacity(ch1) >= capacity(ch2) else 2
    _logger.warning(
        "%s and %s are not more-capable comparable, receiver %d set dominant",
        ch1,
        ch2,
        res,
    )
    return res


def superposition_region(
    ch1: BisoChannel,
    ch2: BisoChannel,
    dominant: Literal[1, 2] = 1,
    grid_n: Optional[int] = None,
) -> RateRegion:
    """
    Superposition coding with a BSC(s) cloud center and uniform X. With
    receiver 1 dominant the region at s is
    R2 <= f2(s), R1 + R2 <= f2(s) + C1 - f1(s), R1 + R2 <= C1.
    """
    grid_n = grid_n or config.region_grid_n
    strong, weak = (ch1, ch2) if dominant == 1 else (ch2, ch1)
    s = np.linspace(0.0, 0.5, grid_n)
    c_strong = capacity(strong)
    f_strong = np.asarray(f_value(strong, s))
    f_weak = np.asarray(f_value(weak, s))
    total = np.minimum(f_weak + c_strong - f_strong, c_strong)
    first, second = polytope_corners(total, f_weak, total)
    points = np.concatenate([first, second])
    if dominant == 2:
        points = points[:, ::-1]
    region = _region("sup", points, {"s": np.concatenate([s, s])})
    _logger.debug("superposition (dominant %d): sum rate %.9g", dominant, region.max_sum_rate)
    return region


def _rtd_objective(
    s1: np.ndarray, s2: np.ndarray, g1: np.ndarray, g2: np.ndarray
) -> Tuple[np.ndarray, np.ndarray]:
    """
    min{(1 - a) g1, a g2} with a = (1/2 - s1) / (1 - s1 - s2), the mixing
    weight that makes X uniform once s2 is reflected to 1 - s2.
    """
    denominator = 1.0 - s1 - s2
    a = np.divide(
        0.5 - s1, denominator, out=np.full_like(denominator, 0.5), where=denominator > 0
    )
    return np.minimum((1.0 - a) * g1, a * g2), a


def rtd_max_sum_rate(
    prof1: FProfile, prof2: FProfile, tol: Optional[Tolerance] = None
) -> Tuple[float, Optional[Dict[str, float]]]:
    """
    Maximum sum rate of randomized time division, which equals Marton's
    for binary inputs:
    C + max over s1 in I, s2 in J of min{(1-a)(f1-f2)(s1), a(f2-f1)(s2)}.
    Returns C and no generator when I or J is empty.
    """
    tol = tol or config.tolerance
    c = _common_capacity(prof1, prof2, tol)
    s = prof1.grid
    d = prof1.values - prof2.values
    i_idx = np.flatnonzero(d > tol.strict_margin)
    j_idx = np.flatnonzero(d < -tol.strict_margin)
    if len(i_idx) == 0 or len(j_idx) == 0:
        return c, None

    s1, s2 = np.meshgrid(s[i_idx], s[j_idx], indexing="ij")
    g1, g2 = np.meshgrid(d[i_idx], -d[j_idx], indexing="ij")
    values, _ = _rtd_objective(s1, s2, g1, g2)
    k = np.unravel_index(int(np.argmax(values)), values.shape)
    start = np.array([s1[k], s2[k]])
    best = float(values[k])

    def negative(x: np.ndarray) -> float:
        x1, x2 = np.clip(x, 0.0, 0.5)
        if x1 >= 0.5 or x2 >= 0.5:
            return 0.0
        gap1 = prof1.at(x1) - prof2.at(x1)
        gap2 = prof2.at(x2) - prof1.at(x2)
        value, _ = _rtd_objective(
            np.array([x1]), np.array([x2]), np.array([gap1]), np.array([gap2])
        )
        return -float(value[0])

    step = float(s[1] - s[0])
    res = minimize(
        negative,
        start,
        method="Nelder-Mead",
        options={
            "initial_simplex": [start, start + [step, 0.0], start + [0.0, step]],
            "xatol": tol.root_eps,
            "fatol": tol.root_eps,
        },
    )
    if -res.fun > best:
        best = -float(res.fun)
        start = np.clip(res.x, 0.0, 0.5)
    _, a = _rtd_objective(start[:1], start[1:], np.ones(1), np.ones(1))
    generator = {"s1": float(start[0]), "s2": float(start[1]), "a": float(a[0])}
    _logger.debug("RTD sum rate C + %.3g at %s", best, generator)
    return c + max(best, 0.0), generator


def rtd_region(
    prof1: FProfile, prof2: FProfile, tol: Optional[Tolerance] = None
) -> RateRegion:
    """
    Randomized time division with binary W, P(W=0) = a, bias 1 - s2 in the
    slots of receiver 1 and s1 in those of receiver 2:
    R1 <= a C + (1-a) f1(s1), R2 <= a f2(s2) + (1-a) C and
    R1 + R2 <= min{I(W;Y1), I(W;Y2)} + a(C - f1(s2)) + (1-a)(C - f2(s1)).
    """
    tol = tol or config.tolerance
    c = _common_capacity(prof1, prof2, tol)
    s = prof1.grid[:-1]
    f1, f2 = prof1.values[:-1], prof2.values[:-1]
    i1, i2 = np.meshgrid(np.arange(len(s)), np.arange(len(s)), indexing="ij")
    i1, i2 = i1.ravel(), i2.ravel()
    a = (0.5 - s[i1]) / (1.0 - s[i1] - s[i2])
    w1 = a * f1[i2] + (1.0 - a) * f1[i1]
    w2 = a * f2[i2] + (1.0 - a) * f2[i1]
    r1 = a * c + (1.0 - a) * f1[i1]
    r2 = a * f2[i2] + (1.0 - a) * c
    total = np.minimum(w1, w2) + a * (c - f1[i2]) + (1.0 - a) * (c - f2[i1])
    first, second = polytope_corners(r1, r2, total)
    points = np.concatenate([first, second])
    columns = {
        "s1": np.tile(s[i1], 2),
        "s2": np.tile(s[i2], 2),
        "a": np.tile(a, 2),
    }
    return _region("rtd", points, columns)


def _ob_max_sum(f1: np.ndarray, f2: np.ndarray, c: float) -> Tuple[float, np.ndarray, np.ndarray]:
    """
    max t subject to t <= sum(lam f1) + sum(mu f2), t <= C + sum(lam g),
    t <= C - sum(mu g), lam and mu convex weights, g = f1 - f2.
    """
    m = len(f1)
    g = f1 - f2
    zeros = np.zeros(m)
    objective = np.concatenate([zeros, zeros, [-1.0]])
    a_ub = np.array(
        [
            np.concatenate([-f1, -f2, [1.0]]),
            np.concatenate([-g, zeros, [1.0]]),
            np.concatenate([zeros, g, [1.0]]),
        ]
    )
    b_ub = np.array([0.0, c, c])
    a_eq = np.array(
        [
            np.concatenate([np.ones(m), zeros, [0.0]]),
            np.concatenate([zeros, np.ones(m), [0.0]]),
        ]
    )
    res = linprog(
        objective,
        A_ub=a_ub,
        b_ub=b_ub,
        A_eq=a_eq,
        b_eq=[1.0, 1.0],
        bounds=[(0.0, None)] * (2 * m) + [(None, None)],
        method="highs",
        options=_HIGHS_OPTIONS,
    )
    lam, mu = _convex_weights(res.x[:m]), _convex_weights(res.x[m : 2 * m])
    value = min(lam @ f1 + mu @ f2, c + lam @ g, c - mu @ g)
    return float(value), lam, mu


def _convex_weights(x: np.ndarray) -> np.ndarray:
    x = np.maximum(x, 0.0)
    return x / x.sum()


def _ob_weighted(
    f1: np.ndarray, f2: np.ndarray, c: float, w: float
) -> Tuple[float, float]:
    """max w R1 + (1-w) R2 over the time-shared outer bound."""
    m = len(f1)
    g = f1 - f2
    zeros = np.zeros(m)
    objective = np.concatenate([zeros, zeros, [-w, -(1.0 - w)]])
    a_ub = np.array(
        [
            np.concatenate([-f1, zeros, [1.0, 0.0]]),
            np.concatenate([zeros, -f2, [0.0, 1.0]]),
            np.concatenate([-g, zeros, [1.0, 1.0]]),
            np.concatenate([zeros, g, [1.0, 1.0]]),
        ]
    )
    b_ub = np.array([0.0, 0.0, c, c])
    a_eq = np.array(
        [
            np.concatenate([np.ones(m), zeros, [0.0, 0.0]]),
            np.concatenate([zeros, np.ones(m), [0.0, 0.0]]),
        ]
    )
    res = linprog(
        objective,
        A_ub=a_ub,
        b_ub=b_ub,
        A_eq=a_eq,
        b_eq=[1.0, 1.0],
        bounds=[(0.0, None)] * (2 * m + 2),
        method="highs",
        options=_HIGHS_OPTIONS,
    )
    lam, mu = _convex_weights(res.x[:m]), _convex_weights(res.x[m : 2 * m])
    total = min(c + lam @ g, c - mu @ g)
    r1 = min(res.x[-2], lam @ f1, total)
    r2 = min(res.x[-1], mu @ f2, total - r1)
    return float(max(r1, 0.0)), float(max(r2, 0.0))


def ob_max_sum_rate(
    prof1: FProfile, prof2: FProfile, tol: Optional[Tolerance] = None
) -> float:
    tol = tol or config.tolerance
    c = _common_capacity(prof1, prof2, tol)
    value, _, _ = _ob_max_sum(prof1.values, prof2.values, c)
    return value


def ob_region(
    prof1: FProfile,
    prof2: FProfile,
    n_weights: Optional[int] = None,
    time_sharing: bool = True,
    tol: Optional[Tolerance] = None,
) -> RateRegion:
    """
    Outer bound over BSC auxiliaries U ~ s1, V ~ s2:
    R1 <= f1(s1), R2 <= f2(s2), R1 + R2 <= f1(s1) + C - f2(s1),
    R1 + R2 <= f2(s2) + C - f1(s2).

    With ``time_sharing`` U and V may mix several BSC auxiliaries (each
    keeps X uniform), which turns the union into linear programs over the
    s-grid. Without it the frontier is swept over the closed-form corners
    of each (s1, s2) polytope.
    """
    tol = tol or config.tolerance
    n_weights = n_weights or config.frontier_weights
    c = _common_capacity(prof1, prof2, tol)
    f1, f2 = prof1.values, prof2.values
    s = prof1.grid

    if time_sharing:
        # w = 1/2 maximizes the sum rate
        weights = np.union1d(np.linspace(0.0, 1.0, n_weights), [0.5])
        points = np.array([_ob_weighted(f1, f2, c, w) for w in weights])
        front = pareto_indices(points, eps=tol.abs_eps)
        return RateRegion(
            bound="ob",
            frontier=points[front],
            max_sum_rate=float(points[front].sum(axis=1).max()),
            generators=[{"weight": float(weights[i])} for i in front],
        )

    g = f1 - f2
    i1, i2 = np.meshgrid(np.arange(len(s)), np.arange(len(s)), indexing="ij")
    i1, i2 = i1.ravel(), i2.ravel()
    total = np.minimum(c + g[i1], c - g[i2])
    first, second = polytope_corners(f1[i1], f2[i2], total)
    points = np.concatenate([first, second])
    chosen = weighted_sum_sweep(points, n_weights)
    chosen = chosen[pareto_indices(points[chosen])]
    return RateRegion(
        bound="ob",
        frontier=points[chosen],
        max_sum_rate=float(points.sum(axis=1).max()),
        generators=_generators(
            {"s1": np.tile(s[i1], 2), "s2": np.tile(s[i2], 2)}, chosen
        ),
    )


def _is_clear(value: float, tol: Tolerance) -> bool:
    return abs(value) <= _CLEAR_ZERO * tol.abs_eps or abs(value) >= _CLEAR_GAP * tol.strict_margin


def equivalence_report(
    ch1: BisoChannel,
    ch2: BisoChannel,
    grid_n: Optional[int] = None,
    tol: Optional[Tolerance] = None,
    strict: bool = True,
) -> EquivalenceReport:
    """
    Evaluate the five statements that are equivalent for equal-capacity
    BISO pairs: (a) not more-capable comparable, (b) TD < OB,
    (c) f1(s1) + f2(s2) > C for some s1 in I and s2 in J, (d) TD < RTD,
    (e) RTD < OB. Strict inclusion is a sum-rate gap above strict_margin.

    Raises EquivalenceViolation when the statements disagree and none of
    the underlying gaps sits close to its threshold.
    """
    tol = tol or config.tolerance
    c = require_equal_capacity(capacity(ch1), capacity(ch2), tol)
    prof1, prof2 = f_profile(ch1, grid_n), f_profile(ch2, grid_n)

    try:
        verdict = more_capable_numeric(ch1, ch2, tol=tol)
        incomparable = verdict.kind == VerdictKind.INCOMPARABLE
        crossing = min(verdict.max_gap, -verdict.min_gap)
    except UndecidedOrdering as e:
        # the excursion inside the margin band makes the report borderline
        _logger.warning("%s", e)
        incomparable = False
        crossing = e.excursion

    d = prof1.values - prof2.values
    in_i = d > tol.strict_margin
    in_j = d < -tol.strict_margin
    witness = None
    excess = 0.0
    if in_i.any() and in_j.any():
        k1 = int(np.argmax(np.where(in_i, prof1.values, -np.inf)))
        k2 = int(np.argmax(np.where(in_j, prof2.values, -np.inf)))
        excess = float(prof1.values[k1] + prof2.values[k2] - c)
        witness = (float(prof1.grid[k1]), float(prof2.grid[k2]))

    td_sum = td_region(prof1.capacity, prof2.capacity, 2).max_sum_rate
    rtd_sum, _ = rtd_max_sum_rate(prof1, prof2, tol)
    ob_sum = ob_max_sum_rate(prof1, prof2, tol)

    predicates = {
        "a": incomparable,
        "b": ob_sum > td_sum + tol.strict_margin,
        "c": excess > tol.strict_margin,
        "d": rtd_sum > td_sum + tol.strict_margin,
        "e": ob_sum > rtd_sum + tol.strict_margin,
    }
    gaps = [crossing, excess, ob_sum - td_sum, rtd_sum - td_sum, ob_sum - rtd_sum]
    borderline = not all(_is_clear(v, tol) for v in gaps)
    report = EquivalenceReport(
        capacity=c,
        capacity_gap=abs(prof1.capacity - prof2.capacity),
        predicates=predicates,
        td_sum=td_sum,
        rtd_sum=rtd_sum,
        ob_sum=ob_sum,
        witness=witness,
        excess=excess,
        borderline=borderline,
    )
    if not report.consistent:
        if borderline or not strict:
            _logger.warning("statements disagree near their thresholds: %s", predicates)
        else:
            raise EquivalenceViolation(predicates)
    return report


def sum_rates(
    ch1: BisoChannel,
    ch2: BisoChannel,
    grid_n: Optional[int] = None,
    tol: Optional[Tolerance] = None,
) -> SumRates:
    tol = tol or config.tolerance
    prof1, prof2 = f_profile(ch1, grid_n), f_profile(ch2, grid_n)
    _common_capacity(prof1, prof2, tol)
    rtd, _ = rtd_max_sum_rate(prof1, prof2, tol)
    return SumRates(
        td=max(prof1.capacity, prof2.capacity),
        rtd=rtd,
        ob=ob_max_sum_rate(prof1, prof2, tol),
    )


def better_receiver_demo(
    ch1: BisoChannel,
    ch2: BisoChannel,
    grid_n: Optional[int] = None,
    tol: Optional[Tolerance] = None,
) -> BetterReceiverReport:
    """
    Replace the second receiver of an incomparable equal-capacity pair by
    BEC(C), a more capable channel, and compare the achievable sum rates.
    """
    tol = tol or config.tolerance
    c = require_equal_capacity(capacity(ch1), capacity(ch2), tol)
    try:
        verdict = more_capable_numeric(ch1, ch2, tol=tol)
    except UndecidedOrdering as e:
        raise PreconditionError(f"incomparability not established: {e}")
    if verdict.kind != VerdictKind.INCOMPARABLE:
        raise PreconditionError(
            f"{ch1} and {ch2} are more-capable comparable ({verdict.name})"
        )
    # BEC(C) built at ch1's capacity so the pair matches exactly
    replacement = bec_with_capacity(capacity(ch1))
    report = BetterReceiverReport(
        capacity=c,
        original=sum_rates(ch1, ch2, grid_n, tol),
        replaced=sum_rates(ch1, replacement, grid_n, tol),
        replacement_label=str(replacement),
    )
    _logger.info(
        "sum rate %.9g with %s, %.9g with %s",
        report.original.rtd,
        ch2,
        report.replaced.rtd,
        replacement,
    )
    return report
