"""
Scalar primitives in bits: binary entropy, its inverse on [0, 1/2] and the
binary convolution. Every function accepts floats or numpy arrays.
"""

from typing import Optional, Union

import numpy as np

from biso import config
from biso.models.errors import DomainError
from biso.models.tolerance import Tolerance

ArrayLike = Union[float, np.ndarray]

__all__ = [
    "Tolerance",
    "binary_entropy",
    "entropy_array",
    "binary_entropy_inverse",
    "convolve",
    "gerber",
    "fold",
]

_MAX_BISECTIONS = 80
_RELATIVE_EPS = np.finfo(float).eps


def _as_probability(x: ArrayLike, name: str, tol: Tolerance) -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    if np.any(np.isnan(arr)):
        raise DomainError(f"{name} is NaN")
    if np.any(arr < -tol.abs_eps) or np.any(arr > 1 + tol.abs_eps):
        raise DomainError(f"{name} must lie in [0, 1], got {x}")
    return np.clip(arr, 0.0, 1.0)


def _unwrap(arr: np.ndarray, like: ArrayLike) -> ArrayLike:
    if np.ndim(like) == 0:
        return float(arr)
    return arr


def _xlog2x(x: np.ndarray) -> np.ndarray:
    # 0 log 0 := 0
    out = np.zeros_like(x)
    positive = x > 0
    out[positive] = x[positive] * np.log2(x[positive])
    return out


def entropy_array(x: np.ndarray) -> np.ndarray:
    """Unchecked h(x) for arrays already known to lie in [0, 1]."""
    x = np.clip(x, 0.0, 1.0)
    return np.clip(-_xlog2x(x) - _xlog2x(1.0 - x), 0.0, 1.0)


def binary_entropy(x: ArrayLike, tol: Optional[Tolerance] = None) -> ArrayLike:
    """h(x) = -x log2 x - (1-x) log2(1-x), with h(0) = h(1) = 0."""
    tol = tol or config.tolerance
    arr = np.atleast_1d(_as_probability(x, "x", tol))
    h = -_xlog2x(arr) - _xlog2x(1.0 - arr)
    return _unwrap(np.clip(h, 0.0, 1.0).reshape(np.shape(x)), x)


def binary_entropy_inverse(
    y: ArrayLike, tol: Optional[Tolerance] = None
) -> ArrayLike:
    """
    The unique x in [0, 1/2] with h(x) = y, found by bisection.

    h is strictly increasing on [0, 1/2], so the bracket [0, 1/2] always
    contains the root. The bracket is halved until it collapses to machine
    precision, which leaves |h(x) - y| far below root_eps.
    """
    tol = tol or config.tolerance
    target = np.atleast_1d(_as_probability(y, "y", tol))
    lo = np.zeros_like(target)
    hi = np.full_like(target, 0.5)
    for _ in range(_MAX_BISECTIONS):
        mid = 0.5 * (lo + hi)
        h_mid = -_xlog2x(mid) - _xlog2x(1.0 - mid)
        below = h_mid < target
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
        if np.all(hi - lo <= _RELATIVE_EPS * hi):
            break
    mid = 0.5 * (lo + hi)
    # exact endpoints
    mid = np.where(target <= 0.0, 0.0, mid)
    mid = np.where(target >= 1.0, 0.5, mid)
    return _unwrap(mid.reshape(np.shape(y)), y)


def convolve(a: ArrayLike, b: ArrayLike, tol: Optional[Tolerance] = None) -> ArrayLike:
    """a * b = a(1-b) + b(1-a), the crossover of two cascaded BSCs."""
    tol = tol or config.tolerance
    a_arr = _as_probability(a, "a", tol)
    b_arr = _as_probability(b, "b", tol)
    out = np.clip(a_arr * (1.0 - b_arr) + b_arr * (1.0 - a_arr), 0.0, 1.0)
    if np.ndim(out) == 0:
        return float(out)
    return out


def fold(x: ArrayLike) -> ArrayLike:
    """Reflect a probability onto [0, 1/2]: x -> min(x, 1-x)."""
    arr = np.minimum(np.asarray(x, dtype=float), 1.0 - np.asarray(x, dtype=float))
    if np.ndim(arr) == 0:
        return float(arr)
    return arr


def gerber(x: float, y: ArrayLike, tol: Optional[Tolerance] = None) -> ArrayLike:
    """y -> h(x * h^{-1}(y)), convex in y for every fixed x."""
    tol = tol or config.tolerance
    return binary_entropy(convolve(x, binary_entropy_inverse(y, tol), tol), tol)
