from dataclasses import dataclass

import numpy as np

from biso.models.errors import DomainError


@dataclass(frozen=True, eq=False)
class AuxChannel:
    """
    An auxiliary U -> X with P(U = i) = u_probs[i] and
    P(X = 0 | U = i) = x_given_u[i].
    """

    u_probs: np.ndarray
    x_given_u: np.ndarray

    def __post_init__(self):
        u = np.asarray(self.u_probs, dtype=float)
        s = np.asarray(self.x_given_u, dtype=float)
        if u.ndim != 1 or u.shape != s.shape:
            raise DomainError("u_probs and x_given_u must be vectors of equal length")
        if np.any(u < 0.0) or abs(u.sum() - 1.0) > 1e-9:
            raise DomainError(f"u_probs is not a probability vector: {u}")
        if np.any(s < 0.0) or np.any(s > 1.0):
            raise DomainError(f"x_given_u entries must lie in [0, 1]: {s}")
        object.__setattr__(self, "u_probs", u / u.sum())
        object.__setattr__(self, "x_given_u", s)

    @property
    def states(self) -> int:
        return len(self.u_probs)

    @property
    def x_bias(self) -> float:
        """P(X = 0) induced by the auxiliary."""
        return float(self.u_probs @ self.x_given_u)

    @property
    def joint_ux(self) -> np.ndarray:
        """|U| x 2 array of P(U = u, X = x)."""
        return np.stack(
            [self.u_probs * self.x_given_u, self.u_probs * (1.0 - self.x_given_u)],
            axis=1,
        )

    @classmethod
    def bsc(cls, s: float) -> "AuxChannel":
        """Uniform binary U with X = U xor BSC(s) noise."""
        return cls(np.array([0.5, 0.5]), np.array([1.0 - s, s]))

    def to_dict(self) -> dict:
        return {
            "u_probs": self.u_probs.tolist(),
            "x_given_u": self.x_given_u.tolist(),
        }
