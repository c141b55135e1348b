"""
Brute-force verifiers built on explicit joint distributions.

They share no code path with the closed-form mutual information of the
channel module, so agreement between the two is meaningful.
"""

import logging
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import minimize_scalar

from biso import config
from biso.models.aux_channel import AuxChannel
from biso.models.binmath import binary_entropy_inverse, convolve, entropy_array
from biso.models.channel import BiasLike, BisoChannel, InputBias, capacity, f_value
from biso.models.errors import DomainError, PreconditionError
from biso.models.lorenz import biso_curve, common_refinement
from biso.models.tolerance import Tolerance

_logger = logging.getLogger(__name__)

_GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0


def _xlog2x(p: np.ndarray) -> np.ndarray:
    # 0 log 0 := 0
    logs = np.log2(p, out=np.zeros_like(p), where=p > 0)
    return p * logs


def _entropy(p: np.ndarray, axis=None) -> np.ndarray:
    """Shannon entropy in bits, summed over ``axis`` (all axes by default)."""
    return -np.sum(_xlog2x(np.asarray(p, dtype=float)), axis=axis)


def _mi(joint: np.ndarray) -> float:
    """I(A;B) of a 2-D joint distribution p(a, b)."""
    joint = np.asarray(joint, dtype=float)
    return float(
        _entropy(joint.sum(axis=1)) + _entropy(joint.sum(axis=0)) - _entropy(joint)
    )


def mi_from_joint(ch: BisoChannel, bias: BiasLike) -> float:
    """
    I(X;Y) with P(X=0) = bias, summed term by term over the joint p(x, y)
    of the transition matrix.
    """
    x = bias.x if isinstance(bias, InputBias) else float(bias)
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"input bias must lie in [0, 1], got {x}")
    rows = ch.to_rows()
    joint = np.array([[x], [1.0 - x]]) * rows
    return max(_mi(joint), 0.0)


def blahut_arimoto_capacity(
    ch: BisoChannel, thresh: float = 1e-14, max_iter: int = 10_000
) -> Tuple[float, np.ndarray]:
    """
    Capacity and optimal input law of the transition matrix by the
    Blahut-Arimoto iteration.
    """
    p_y_x = ch.to_rows()
    r = np.full(2, 0.5)
    for _ in range(max_iter):
        q = r[:, None] * p_y_x
        q = q / np.maximum(q.sum(axis=0), 1e-300)
        logs = np.log(q, out=np.zeros_like(q), where=q > 0)
        r_next = np.exp(np.sum(p_y_x * logs, axis=1))
        r_next = r_next / r_next.sum()
        step = np.linalg.norm(r_next - r)
        r = r_next
        if step < thresh:
            break
    joint = r[:, None] * p_y_x
    return max(_mi(joint), 0.0), r


def _objective_batch(
    rows1: np.ndarray,
    rows2: np.ndarray,
    u: np.ndarray,
    s: np.ndarray,
    lam: float,
) -> np.ndarray:
    """
    (lam + 1) I(U;Y2) + I(X;Y1|U) for a batch of auxiliaries given as
    (B, M) arrays of state probabilities u and biases s = P(X=0|U).
    """
    pux = np.stack([u * s, u * (1.0 - s)], axis=-1)
    h_u = _entropy(u, axis=-1)
    puy2 = pux @ rows2
    puy1 = pux @ rows1
    px = pux.sum(axis=1)
    i_uy2 = _entropy(puy2.sum(axis=1), axis=-1) - (
        _entropy(puy2, axis=(1, 2)) - h_u
    )
    h_y1_given_u = _entropy(puy1, axis=(1, 2)) - h_u
    h_y1_given_x = px @ _entropy(rows1, axis=-1)
    return (lam + 1.0) * i_uy2 + (h_y1_given_u - h_y1_given_x)


def aux_objective(
    ch1: BisoChannel, ch2: BisoChannel, aux: AuxChannel, lam: float
) -> float:
    """(lam + 1) I(U;Y2) + I(X;Y1|U) from the joint over (U, X, Y)."""
    value = _objective_batch(
        ch1.to_rows(), ch2.to_rows(), aux.u_probs[None, :], aux.x_given_u[None, :], lam
    )
    return float(value[0])


def _bsc_objective(ch1: BisoChannel, ch2: BisoChannel, lam: float, s) -> np.ndarray:
    return (lam + 1.0) * np.asarray(f_value(ch2, s)) + capacity(ch1) - np.asarray(
        f_value(ch1, s)
    )


def best_bsc_aux(
    ch1: BisoChannel,
    ch2: BisoChannel,
    lam: float,
    grid_n: Optional[int] = None,
    tol: Optional[Tolerance] = None,
) -> Tuple[float, float]:
    """
    max over s in [0, 1/2] of (lam + 1) f2(s) + C1 - f1(s), the objective
    of the BSC(s) auxiliary with uniform X. Returns (value, s).
    """
    tol = tol or config.tolerance
    grid_n = grid_n or config.grid_n
    grid = np.linspace(0.0, 0.5, grid_n)
    values = _bsc_objective(ch1, ch2, lam, grid)
    best_k = int(np.argmax(values))
    best = (float(values[best_k]), float(grid[best_k]))
    peaks = [
        k
        for k in range(1, grid_n - 1)
        if values[k] >= values[k - 1] and values[k] >= values[k + 1]
    ]
    for k in peaks:
        res = minimize_scalar(
            lambda x: -float(_bsc_objective(ch1, ch2, lam, x)),
            bounds=(grid[k - 1], grid[k + 1]),
            method="bounded",
            options={"xatol": tol.root_eps},
        )
        if -res.fun > best[0]:
            best = (-float(res.fun), float(res.x))
    return best


def _symmetrize_batch(u: np.ndarray, s: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    return np.concatenate([u, u], axis=-1) / 2.0, np.concatenate([s, 1.0 - s], axis=-1)


def _golden(
    fun: Callable[[np.ndarray], np.ndarray], batch: int, iters: int
) -> np.ndarray:
    """Row-wise golden-section maximization of fun(t) over t in [0, 1]."""
    lo = np.zeros(batch)
    hi = np.ones(batch)
    x1 = hi - _GOLDEN * (hi - lo)
    x2 = lo + _GOLDEN * (hi - lo)
    f1, f2 = fun(x1), fun(x2)
    for _ in range(iters):
        left = f1 >= f2
        hi = np.where(left, x2, hi)
        lo = np.where(left, lo, x1)
        x2_new = np.where(left, x1, lo + _GOLDEN * (hi - lo))
        x1_new = np.where(left, hi - _GOLDEN * (hi - lo), x2)
        f_new = fun(np.where(left, x1_new, x2_new))
        f1, f2 = np.where(left, f_new, f2), np.where(left, f1, f_new)
        x1, x2 = x1_new, x2_new
    return 0.5 * (lo + hi)


def _with_state_mass(u: np.ndarray, i: int, t: np.ndarray) -> np.ndarray:
    """Set u_i = t and rescale the other states to keep the total at 1."""
    rest = 1.0 - u[:, i]
    out = u.copy()
    others = np.arange(u.shape[1]) != i
    share = np.where(
        rest[:, None] > 1e-15,
        u[:, others] / np.maximum(rest, 1e-15)[:, None],
        1.0 / max(u.shape[1] - 1, 1),
    )
    out[:, others] = share * (1.0 - t)[:, None]
    out[:, i] = t
    return out


def best_general_aux(
    ch1: BisoChannel,
    ch2: BisoChannel,
    lam: float,
    states: Optional[int] = None,
    restarts: Optional[int] = None,
    seed: Optional[int] = None,
    symmetric: bool = False,
) -> Tuple[float, AuxChannel]:
    """
    Multi-start coordinate ascent of the auxiliary objective over U with at
    most ``states`` states. Each coordinate (a state mass or a state bias)
    is improved by a golden-section line search; a move is kept only if it
    does not lower the objective. All restarts run as one numpy batch and
    the best one wins, ties going to the lowest restart index.

    With ``symmetric`` the search runs over the symmetrized family: half as
    many base states, each paired with its mirrored bias.
    """
    states = states or config.aux_max_states
    restarts = restarts or config.aux_restarts
    seed = config.seed if seed is None else seed
    if not 1 <= states <= 8:
        raise DomainError(f"auxiliary alphabets are limited to 1..8 states, got {states}")
    base = max(states // 2, 1) if symmetric else states
    rng = np.random.default_rng(seed)
    u = rng.dirichlet(np.ones(base), size=restarts)
    s = rng.uniform(0.0, 1.0, size=(restarts, base))
    rows1, rows2 = ch1.to_rows(), ch2.to_rows()

    def evaluate(u_b: np.ndarray, s_b: np.ndarray) -> np.ndarray:
        if symmetric:
            u_b, s_b = _symmetrize_batch(u_b, s_b)
        return _objective_batch(rows1, rows2, u_b, s_b, lam)

    current = evaluate(u, s)
    for sweep in range(config.aux_sweeps):
        for i in range(base):
            def along_bias(t: np.ndarray) -> np.ndarray:
                trial = s.copy()
                trial[:, i] = t
                return evaluate(u, trial)

            t = _golden(along_bias, restarts, config.aux_line_iters)
            trial_s = s.copy()
            trial_s[:, i] = t
            value = evaluate(u, trial_s)
            better = value >= current
            s = np.where(better[:, None], trial_s, s)
            current = np.where(better, value, current)

            if base > 1:
                def along_mass(t: np.ndarray) -> np.ndarray:
                    return evaluate(_with_state_mass(u, i, t), s)

                t = _golden(along_mass, restarts, config.aux_line_iters)
                trial_u = _with_state_mass(u, i, t)
                value = evaluate(trial_u, s)
                better = value >= current
                u = np.where(better[:, None], trial_u, u)
                current = np.where(better, value, current)
        _logger.debug("aux sweep %d: best %.12g", sweep, current.max())

    k = int(np.argmax(current))
    u_best, s_best = u[k : k + 1], s[k : k + 1]
    if symmetric:
        u_best, s_best = _symmetrize_batch(u_best, s_best)
    return float(current[k]), AuxChannel(u_best[0], np.clip(s_best[0], 0.0, 1.0))


def symmetrize_aux(aux: AuxChannel) -> AuxChannel:
    """
    Double every state: (i, 1) carries u_i / 2 with bias s_i and (i, 2)
    carries u_i / 2 with bias 1 - s_i. The induced X is uniform.
    """
    u, s = _symmetrize_batch(aux.u_probs, aux.x_given_u)
    return AuxChannel(u, s)


@dataclass
class SymmetrizationCheck:
    i_uy2: Tuple[float, float]
    i_xy1_given_u: Tuple[float, float]
    i_xy1: Tuple[float, float]
    tolerance: float

    @property
    def passed(self) -> bool:
        before, after = self.i_uy2
        cond_before, cond_after = self.i_xy1_given_u
        x_before, x_after = self.i_xy1
        return (
            after >= before - self.tolerance
            and abs(cond_after - cond_before) <= self.tolerance
            and x_after >= x_before - self.tolerance
        )

    def to_dict(self) -> dict:
        return {
            "I(U;Y2)": list(self.i_uy2),
            "I(X;Y1|U)": list(self.i_xy1_given_u),
            "I(X;Y1)": list(self.i_xy1),
            "passed": self.passed,
        }


def _aux_informations(
    ch1: BisoChannel, ch2: BisoChannel, aux: AuxChannel
) -> Tuple[float, float, float]:
    pux = aux.joint_ux
    i_uy2 = _mi(pux @ ch2.to_rows())
    i_uy1 = _mi(pux @ ch1.to_rows())
    i_xy1 = mi_from_joint(ch1, aux.x_bias)
    return i_uy2, i_xy1 - i_uy1, i_xy1


def symmetrization_check(
    ch1: BisoChannel,
    ch2: BisoChannel,
    aux: AuxChannel,
    tol: Optional[Tolerance] = None,
) -> SymmetrizationCheck:
    """
    Compare U and its symmetrization: I(U;Y2) must not drop,
    I(X;Y1|U) must not change and I(X;Y1) must not drop.
    """
    tol = tol or config.tolerance
    before = _aux_informations(ch1, ch2, aux)
    after = _aux_informations(ch1, ch2, symmetrize_aux(aux))
    return SymmetrizationCheck(
        i_uy2=(before[0], after[0]),
        i_xy1_given_u=(before[1], after[1]),
        i_xy1=(before[2], after[2]),
        tolerance=tol.abs_eps,
    )


def _gerber_lambda(x: float) -> Callable[[np.ndarray], np.ndarray]:
    def fun(y: np.ndarray) -> np.ndarray:
        inner = convolve(x, binary_entropy_inverse(np.clip(y, 0.0, 1.0)))
        return entropy_array(np.asarray(inner)) - y

    return fun


def convex_battery() -> List[Tuple[str, Callable[[np.ndarray], np.ndarray]]]:
    """Convex test functions on [0, 1]."""
    battery: List[Tuple[str, Callable[[np.ndarray], np.ndarray]]] = []
    for p in (1.0, 1.5, 2.0, 3.0, 6.0):
        battery.append((f"t^{p:g}", lambda t, p=p: np.power(t, p)))
    for c in (-4.0, -1.0, 1.0, 4.0):
        battery.append((f"exp({c:g}t)", lambda t, c=c: np.exp(c * t)))
    for a in np.linspace(0.0, 1.0, 21):
        battery.append((f"max(t-{a:.2f},0)", lambda t, a=a: np.maximum(t - a, 0.0)))
    for x in (0.05, 0.11, 0.25, 0.4):
        battery.append((f"gerber({x:g})", _gerber_lambda(x)))
    return battery


def _check_hlp_precondition(
    x: np.ndarray, y: np.ndarray, xi: np.ndarray, tol: Tolerance
) -> None:
    if not (len(x) == len(y) == len(xi)) or len(x) == 0:
        raise PreconditionError("sequences must be nonempty and of equal length")
    if np.any(xi < 0.0):
        raise PreconditionError("weights must be nonnegative")
    if np.any(np.diff(x) < -tol.abs_eps) or np.any(np.diff(y) < -tol.abs_eps):
        raise PreconditionError("sequences must be nondecreasing")
    suffix_x = np.cumsum((xi * x)[::-1])[::-1]
    suffix_y = np.cumsum((xi * y)[::-1])[::-1]
    if abs(suffix_x[0] - suffix_y[0]) > tol.abs_eps:
        raise PreconditionError(
            f"weighted totals differ: {suffix_x[0]:.12g} vs {suffix_y[0]:.12g}"
        )
    if np.any(suffix_x < suffix_y - tol.abs_eps):
        raise PreconditionError("a suffix sum of x falls below that of y")


def hlp_check(
    x_seq: Sequence[float],
    y_seq: Sequence[float],
    xi_seq: Sequence[float],
    convex_samples: Optional[
        Sequence[Tuple[str, Callable[[np.ndarray], np.ndarray]]]
    ] = None,
    tol: Optional[Tolerance] = None,
) -> bool:
    """
    Weighted majorization inequality: if x and y are nondecreasing and every
    suffix sum of xi*x dominates that of xi*y (with equal totals), then
    sum xi Lambda(x) >= sum xi Lambda(y) for every convex Lambda. Checked on
    a battery of convex functions.
    """
    tol = tol or config.tolerance
    x = np.asarray(x_seq, dtype=float)
    y = np.asarray(y_seq, dtype=float)
    xi = np.asarray(xi_seq, dtype=float)
    _check_hlp_precondition(x, y, xi, tol)
    battery = convex_samples if convex_samples is not None else convex_battery()
    ok = True
    for name, fun in battery:
        lhs = float(xi @ fun(x))
        rhs = float(xi @ fun(y))
        if lhs < rhs - tol.abs_eps:
            _logger.warning("convex inequality fails for %s: %.12g < %.12g", name, lhs, rhs)
            ok = False
    return ok


def lorenz_sequences(
    ch1: BisoChannel, ch2: BisoChannel, tol: Optional[Tolerance] = None
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Step values of both BISO curves on the common refinement of their
    partitions, with the interval lengths as weights.
    """
    tol = tol or config.tolerance
    f1, f2 = biso_curve(ch1, tol), biso_curve(ch2, tol)
    t = common_refinement(f1.breakpoints, f2.breakpoints, tol)
    mid = 0.5 * (t[:-1] + t[1:])
    return np.asarray(f1(mid)), np.asarray(f2(mid)), np.diff(t)


def random_hlp_instance(
    rng: np.random.Generator, n: int = 6, transfers: int = 12
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    A random (x, y, xi) meeting the majorization precondition: y is sorted,
    x is y after weighted mass transfers from lower to higher positions
    that keep x sorted and inside [0, 1].
    """
    xi = rng.dirichlet(np.ones(n))
    y = np.sort(rng.uniform(0.0, 1.0, size=n))
    x = y.copy()
    for _ in range(transfers):
        i, j = np.sort(rng.choice(n, size=2, replace=False))
        floor = x[i - 1] if i > 0 else 0.0
        ceiling = x[j + 1] if j < n - 1 else 1.0
        room = min(xi[i] * (x[i] - floor), xi[j] * (ceiling - x[j]))
        if room <= 0.0:
            continue
        delta = rng.uniform(0.0, room)
        x[i] -= delta / xi[i]
        x[j] += delta / xi[j]
    # floating noise can break sortedness by an ulp
    x = np.maximum.accumulate(np.clip(x, 0.0, 1.0))
    return x, y, xi
