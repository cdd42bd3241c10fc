from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np


@dataclass(frozen=True, eq=False)
class FitResult:
    """Parameters of y = alpha + beta * sin^2(delta * t + gamma).

    Canonical form: beta >= 0, delta >= 0 and gamma in [0, pi).
    """

    alpha: float
    beta: float
    delta: float
    gamma: float
    residual_sum_squares: float
    stderr: Tuple[float, float, float, float]
    converged: bool
    iterations: int
    n_points: int
    degenerate: bool = False
    covariance: Optional[np.ndarray] = None   # 4x4 over (alpha, beta, delta, gamma)

    @property
    def parameters(self) -> Tuple[float, float, float, float]:
        return self.alpha, self.beta, self.delta, self.gamma

    @property
    def maximum(self) -> float:
        return self.alpha + self.beta

    @property
    def minimum(self) -> float:
        return self.alpha

    @property
    def maximum_stderr(self) -> float:
        """Standard error of alpha + beta, including their covariance."""
        if self.covariance is None:
            return float(np.hypot(self.stderr[0], self.stderr[1]))
        cov = self.covariance
        return float(np.sqrt(max(cov[0, 0] + cov[1, 1] + 2 * cov[0, 1], 0.0)))

    @property
    def minimum_stderr(self) -> float:
        return self.stderr[0]

    def to_dict(self) -> dict:
        return {
            'alpha': self.alpha,
            'beta': self.beta,
            'delta': self.delta,
            'gamma': self.gamma,
            'stderr': list(self.stderr),
            'residual_sum_squares': self.residual_sum_squares,
            'converged': self.converged,
            'degenerate': self.degenerate,
            'iterations': self.iterations,
            'n_points': self.n_points,
        }


@dataclass(frozen=True)
class Visibility:
    """Fringe visibility with its first-order standard error."""

    value: float
    stderr: float

    def to_dict(self) -> dict:
        return {'value': self.value, 'stderr': self.stderr}
