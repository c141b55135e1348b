"""
Geometry helpers for two-user rate regions: Pareto filtering, the upper
concave envelope of a point cloud and the corner points of the polytope
{R1 <= a, R2 <= b, R1 + R2 <= c, R >= 0}.
"""

from typing import Tuple

import numpy as np


def pareto_indices(points: np.ndarray, eps: float = 0.0) -> np.ndarray:
    """
    Indices of the non-dominated points, ordered by R1 increasing (and so
    R2 decreasing). A point survives if its R2 beats, by more than eps,
    every point with a larger R1 (or an equal R1 and a larger R2).
    """
    points = np.asarray(points, dtype=float)
    if len(points) == 0:
        return np.zeros(0, dtype=int)
    # R1 descending, ties by R2 descending
    order = np.lexsort((-points[:, 1], -points[:, 0]))
    r2 = points[order, 1]
    best_before = np.concatenate([[-np.inf], np.maximum.accumulate(r2)[:-1]])
    keep = order[r2 > best_before + eps]
    return keep[::-1].astype(int)


def _cross(o: np.ndarray, a: np.ndarray, b: np.ndarray) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def upper_concave_envelope(points: np.ndarray, eps: float = 0.0) -> np.ndarray:
    """
    Indices of the vertices of the upper-right boundary of the convex hull
    of ``points``, ordered by R1 increasing. Monotone-chain scan.
    """
    points = np.asarray(points, dtype=float)
    if len(points) == 0:
        return np.zeros(0, dtype=int)
    order = np.lexsort((-points[:, 1], points[:, 0]))
    hull = []
    for i in order:
        if hull and np.allclose(points[hull[-1], 0], points[i, 0]):
            # same R1: the first one seen has the larger R2
            continue
        while len(hull) >= 2 and _cross(points[hull[-2]], points[hull[-1]], points[i]) >= -eps:
            hull.pop()
        hull.append(i)
    hull = np.array(hull, dtype=int)
    # keep the Pareto part, from the highest R2 to the largest R1
    start = int(np.argmax(points[hull, 1] + 1e-15 * points[hull, 0]))
    return hull[start:]


def polytope_corners(
    a: np.ndarray, b: np.ndarray, c: np.ndarray
) -> Tuple[np.ndarray, np.ndarray]:
    """
    The two Pareto corners of {R1 <= a, R2 <= b, R1 + R2 <= c, R >= 0},
    vectorized over arrays of constraint levels. They coincide when the
    sum constraint is slack.
    """
    a = np.maximum(np.asarray(a, dtype=float), 0.0)
    b = np.maximum(np.asarray(b, dtype=float), 0.0)
    c = np.maximum(np.asarray(c, dtype=float), 0.0)
    r1_first = np.minimum(a, c)
    first = np.stack([r1_first, np.minimum(b, c - r1_first)], axis=-1)
    r2_second = np.minimum(b, c)
    second = np.stack([np.minimum(a, c - r2_second), r2_second], axis=-1)
    return first, second


def weighted_sum_sweep(points: np.ndarray, n_weights: int) -> np.ndarray:
    """
    For each weight w in [0, 1], the index of the point maximizing
    w R1 + (1 - w) R2. Returns the distinct maximizers in sweep order.
    """
    points = np.asarray(points, dtype=float)
    weights = np.union1d(np.linspace(0.0, 1.0, n_weights), [0.5])
    best = np.array(
        [int(np.argmax(w * points[:, 0] + (1.0 - w) * points[:, 1])) for w in weights]
    )
    _, first = np.unique(best, return_index=True)
    return best[np.sort(first)]
