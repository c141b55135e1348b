"""
BISO partitions, step curves and Lorenz curves.

The step curve f(t) takes the sorted per-pair entropies h(p_k / xi_k) on
consecutive intervals of length xi_k; the Lorenz curve F(t) is its running
integral. F is convex, piecewise linear with slopes in [0, 1], and the
channel capacity is 1 - F(1).
"""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from biso import config
from biso.models.channel import BisoChannel
from biso.models.tolerance import Tolerance

_logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class StepCurve:
    breakpoints: np.ndarray
    values: np.ndarray

    @property
    def widths(self) -> np.ndarray:
        return np.diff(self.breakpoints)

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        # f(t) = v_k on (t_{k-1}, t_k], f(0) = 0
        idx = np.searchsorted(self.breakpoints, t, side="left") - 1
        idx = np.clip(idx, 0, len(self.values) - 1)
        out = np.where(t <= 0.0, 0.0, self.values[idx])
        if out.ndim == 0:
            return float(out)
        return out


@dataclass(frozen=True, eq=False)
class LorenzCurve:
    breakpoints: np.ndarray
    cumulative: np.ndarray

    @property
    def slopes(self) -> np.ndarray:
        return np.diff(self.cumulative) / np.diff(self.breakpoints)

    @property
    def total(self) -> float:
        """F(1)."""
        return float(self.cumulative[-1])

    def __call__(self, t):
        out = np.interp(t, self.breakpoints, self.cumulative)
        if np.ndim(out) == 0:
            return float(out)
        return out


def _merge(t_mass: np.ndarray, values: np.ndarray, eps: float):
    """Merge equal-valued neighbours and intervals shorter than eps."""
    masses = []
    merged = []
    for w, v in zip(t_mass, values):
        if masses and (abs(merged[-1] - v) <= eps or w <= eps):
            total = masses[-1] + w
            merged[-1] = (masses[-1] * merged[-1] + w * v) / total
            masses[-1] = total
        else:
            masses.append(w)
            merged.append(v)
    if len(masses) > 1 and masses[0] <= eps:
        # a leading sliver folds into its right neighbour
        total = masses[0] + masses[1]
        merged[1] = (masses[0] * merged[0] + masses[1] * merged[1]) / total
        masses[1] = total
        masses.pop(0)
        merged.pop(0)
    return np.array(masses), np.array(merged)


def biso_curve(ch: BisoChannel, tol: Optional[Tolerance] = None) -> StepCurve:
    tol = tol or config.tolerance
    h = ch.entropies
    xi = ch.masses
    order = np.argsort(h, kind="stable")
    widths, values = _merge(xi[order], h[order], tol.root_eps)
    breakpoints = np.concatenate([[0.0], np.cumsum(widths)])
    breakpoints[-1] = 1.0
    return StepCurve(breakpoints=breakpoints, values=np.clip(values, 0.0, 1.0))


def lorenz(ch: BisoChannel, tol: Optional[Tolerance] = None) -> LorenzCurve:
    curve = biso_curve(ch, tol)
    cumulative = np.concatenate([[0.0], np.cumsum(curve.widths * curve.values)])
    return LorenzCurve(breakpoints=curve.breakpoints, cumulative=cumulative)


def common_refinement(
    a: np.ndarray, b: np.ndarray, tol: Optional[Tolerance] = None
) -> np.ndarray:
    """Sorted union of two partitions, points closer than root_eps merged."""
    tol = tol or config.tolerance
    points = np.sort(np.concatenate([np.asarray(a, float), np.asarray(b, float)]))
    keep = [points[0]]
    for p in points[1:]:
        if p - keep[-1] > tol.root_eps:
            keep.append(p)
    return np.array(keep)


def dominates(
    f: LorenzCurve,
    g: LorenzCurve,
    strict: bool = False,
    tol: Optional[Tolerance] = None,
) -> bool:
    """
    F <= G on [0, 1], decided at the common-refinement breakpoints.

    Between breakpoints both curves are linear, so the breakpoint check is
    exact. ``strict`` asks for F <= G - strict_margin at every interior
    breakpoint instead of F <= G + abs_eps everywhere.
    """
    tol = tol or config.tolerance
    points = common_refinement(f.breakpoints, g.breakpoints, tol)
    gap = f(points) - g(points)
    if strict:
        interior = (points > 0.0) & (points < 1.0)
        return bool(np.any(interior)) and bool(
            np.all(gap[interior] <= -tol.strict_margin)
        )
    return bool(np.all(gap <= tol.abs_eps))


def dominates_dense(
    f: LorenzCurve, g: LorenzCurve, n: int = 10_000, tol: Optional[Tolerance] = None
) -> bool:
    """F <= G + abs_eps on a uniform grid of n points over [0, 1]."""
    tol = tol or config.tolerance
    t = np.linspace(0.0, 1.0, n)
    return bool(np.all(f(t) - g(t) <= tol.abs_eps))
