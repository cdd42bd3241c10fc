"""Least-squares fitting of fringes to y = alpha + beta * sin^2(delta * t + gamma).

Initial values come from the data (FFT peak for the frequency, a phase
grid with linear amplitudes); refinement is Levenberg-Marquardt with a
finite-difference Jacobian. Results are put in canonical form: beta >= 0,
delta >= 0, gamma in [0, pi).
"""

import logging
import math
from typing import Callable, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import least_squares

from ..errors import FitError, UndefinedVisibilityError
from ..models import FitResult, Visibility

logger = logging.getLogger(__name__)


def sin_squared(ts, alpha: float, beta: float, delta: float, gamma: float) -> np.ndarray:
    """The fringe model alpha + beta * sin^2(delta * t + gamma)."""
    return alpha + beta * np.sin(delta * np.asarray(ts, dtype=float) + gamma) ** 2


class CurveFitter:
    """Fits fringe traces and Malus-law angle scans.

    Thresholds and solver settings live here as class constants; an
    instance only decides whether warnings are logged.
    """

    MIN_POINTS_FRINGE: int = 8
    MIN_POINTS_MALUS: int = 5

    XTOL: float = 1e-10
    FTOL: float = 1e-15
    GTOL: float = 1e-15
    EVALUATIONS_PER_PARAMETER: int = 200

    PHASE_GRID_POINTS: int = 180
    FFT_PADDING: int = 8
    # Peak-to-peak spread below this (relative to the mean) counts as constant data
    DEGENERATE_SPREAD: float = 1e-12

    def __init__(self, warn: bool = True):
        self.warn = warn

    def fit_sin_squared(self, ts: Sequence[float], ys: Sequence[float],
                        weights: Optional[Sequence[float]] = None) -> FitResult:
        """Fit all four parameters; ts should span at least one fringe period."""
        ts, ys, w = self._prepare(ts, ys, weights, self.MIN_POINTS_FRINGE)
        degenerate = self._degenerate(ys, w, delta=0.0)
        if degenerate is not None:
            return degenerate

        delta0 = self._initial_frequency(ts, ys)
        alpha0, beta0, gamma0 = self._initial_phase(ts, ys, w, delta0)

        def residuals(p):
            return np.sqrt(w) * (ys - sin_squared(ts, *p))

        return self._refine(residuals, np.array([alpha0, beta0, delta0, gamma0]), ys.size, fixed_delta=None)

    def fit_malus(self, thetas: Sequence[float], ys: Sequence[float],
                  weights: Optional[Sequence[float]] = None) -> FitResult:
        """Fit alpha + beta * sin^2(theta + gamma) with the frequency fixed to one."""
        thetas, ys, w = self._prepare(thetas, ys, weights, self.MIN_POINTS_MALUS)
        degenerate = self._degenerate(ys, w, delta=1.0)
        if degenerate is not None:
            return degenerate

        alpha0, beta0, gamma0 = self._initial_phase(thetas, ys, w, 1.0)

        def residuals(p):
            alpha, beta, gamma = p
            return np.sqrt(w) * (ys - sin_squared(thetas, alpha, beta, 1.0, gamma))

        return self._refine(residuals, np.array([alpha0, beta0, gamma0]), ys.size, fixed_delta=1.0)

    def _prepare(self, xs, ys, weights, min_points: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        xs = np.asarray(xs, dtype=float)
        ys = np.asarray(ys, dtype=float)
        if xs.shape != ys.shape or xs.ndim != 1:
            raise FitError(f"abscissa and data must be 1-D arrays of equal length, got {xs.shape} and {ys.shape}")
        if xs.size < min_points:
            raise FitError(f"need at least {min_points} points, got {xs.size}")
        if not (np.all(np.isfinite(xs)) and np.all(np.isfinite(ys))):
            raise FitError("data contain non-finite values")
        if weights is None:
            w = 1.0 / np.maximum(ys, 1.0)
        else:
            w = np.asarray(weights, dtype=float)
            if w.shape != ys.shape or np.any(w <= 0) or not np.all(np.isfinite(w)):
                raise FitError("weights must be positive and match the data")
        return xs, ys, w

    def _degenerate(self, ys: np.ndarray, w: np.ndarray, delta: float) -> Optional[FitResult]:
        spread = float(np.ptp(ys))
        if spread > self.DEGENERATE_SPREAD * max(1.0, abs(float(np.mean(ys)))):
            return None
        if self.warn:
            logger.warning("constant data; returning a flat fit with beta = 0")
        alpha = float(np.average(ys, weights=w))
        return FitResult(
            alpha=alpha, beta=0.0, delta=delta, gamma=0.0,
            residual_sum_squares=float(np.sum(w * (ys - alpha) ** 2)),
            stderr=(0.0, 0.0, 0.0, 0.0), converged=True, iterations=0,
            n_points=int(ys.size), degenerate=True,
        )

    def _initial_frequency(self, ts: np.ndarray, ys: np.ndarray) -> float:
        """delta from the strongest non-zero Fourier component.

        sin^2(delta t) oscillates at 2 delta, i.e. at delta / pi cycles per unit.
        """
        order = np.argsort(ts)
        grid = np.linspace(ts[order[0]], ts[order[-1]], ts.size)
        if grid[-1] <= grid[0]:
            raise FitError("abscissa values must not all be equal")
        uniform = np.interp(grid, ts[order], ys[order])
        n_fft = self.FFT_PADDING * ts.size
        spectrum = np.abs(np.fft.rfft(uniform - uniform.mean(), n=n_fft))
        freqs = np.fft.rfftfreq(n_fft, d=grid[1] - grid[0])
        k = int(np.argmax(spectrum[1:])) + 1
        # Parabolic refinement of the peak position
        if 1 <= k < spectrum.size - 1:
            left, mid, right = spectrum[k - 1], spectrum[k], spectrum[k + 1]
            denom = left - 2 * mid + right
            shift = 0.5 * (left - right) / denom if denom != 0 else 0.0
        else:
            shift = 0.0
        frequency = (k + shift) * (freqs[1] - freqs[0])
        return math.pi * frequency

    def _initial_phase(self, xs: np.ndarray, ys: np.ndarray, w: np.ndarray,
                       delta: float) -> Tuple[float, float, float]:
        """Grid over gamma in [0, pi) with alpha, beta solved linearly at each point."""
        root_w = np.sqrt(w)
        best = None
        for gamma in np.linspace(0.0, math.pi, self.PHASE_GRID_POINTS, endpoint=False):
            basis = np.column_stack([np.ones_like(xs), np.sin(delta * xs + gamma) ** 2])
            coef, *_ = np.linalg.lstsq(basis * root_w[:, None], ys * root_w, rcond=None)
            sse = float(np.sum(w * (ys - basis @ coef) ** 2))
            if best is None or sse < best[0]:
                best = (sse, float(coef[0]), float(coef[1]), float(gamma))
        _, alpha, beta, gamma = best
        if not (np.isfinite(alpha) and np.isfinite(beta)):
            alpha, beta = float(ys.min()), float(np.ptp(ys))
        return alpha, beta, gamma

    def _refine(self, residuals: Callable[[np.ndarray], np.ndarray], x0: np.ndarray,
                n_points: int, fixed_delta: Optional[float]) -> FitResult:
        n_params = x0.size
        result = least_squares(
            residuals, x0, method='lm', xtol=self.XTOL, ftol=self.FTOL, gtol=self.GTOL,
            max_nfev=self.EVALUATIONS_PER_PARAMETER * (n_params + 1),
        )
        converged = bool(result.status > 0)
        if not converged and self.warn:
            logger.warning("fit did not converge after %d evaluations: %s", result.nfev, result.message)

        sse = float(np.sum(result.fun ** 2))
        dof = max(n_points - n_params, 1)
        jtj = result.jac.T @ result.jac
        try:
            cov = np.linalg.inv(jtj)
        except np.linalg.LinAlgError:
            cov = np.linalg.pinv(jtj)
        cov = cov * sse / dof

        if fixed_delta is None:
            params = result.x.astype(float)
            full_cov = cov
        else:
            alpha, beta, gamma = result.x
            params = np.array([alpha, beta, fixed_delta, gamma])
            full_cov = np.zeros((4, 4))
            keep = [0, 1, 3]
            full_cov[np.ix_(keep, keep)] = cov

        params, full_cov = _canonicalize(params, full_cov)
        stderr = tuple(float(math.sqrt(max(v, 0.0))) for v in np.diag(full_cov))
        logger.debug("fit finished: status %d after %d evaluations, sse %.3g", result.status, result.nfev, sse)
        return FitResult(
            alpha=float(params[0]), beta=float(params[1]), delta=float(params[2]), gamma=float(params[3]),
            residual_sum_squares=sse, stderr=stderr, converged=converged,
            iterations=int(result.nfev), n_points=int(n_points), covariance=full_cov,
        )


def _canonicalize(params: np.ndarray, cov: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """beta >= 0, delta >= 0, gamma in [0, pi); the covariance follows the linear maps."""
    alpha, beta, delta, gamma = params
    transform = np.eye(4)
    if delta < 0:
        flip = np.diag([1.0, 1.0, -1.0, -1.0])
        delta, gamma = -delta, -gamma
        transform = flip @ transform
    if beta < 0:
        # alpha + beta sin^2 x == (alpha + beta) + |beta| sin^2(x + pi/2)
        swap = np.array([[1.0, 1.0, 0, 0], [0, -1.0, 0, 0], [0, 0, 1.0, 0], [0, 0, 0, 1.0]])
        alpha, beta, gamma = alpha + beta, -beta, gamma + math.pi / 2
        transform = swap @ transform
    gamma = math.fmod(gamma, math.pi)
    if gamma < 0:
        gamma += math.pi
    if gamma >= math.pi:
        gamma = 0.0
    return np.array([alpha, beta, delta, gamma]), transform @ cov @ transform.T


_DEFAULT_FITTER = CurveFitter()


def fit_sin_squared(ts: Sequence[float], ys: Sequence[float],
                    weights: Optional[Sequence[float]] = None) -> FitResult:
    return _DEFAULT_FITTER.fit_sin_squared(ts, ys, weights)


def fit_malus(thetas: Sequence[float], ys: Sequence[float],
              weights: Optional[Sequence[float]] = None) -> FitResult:
    return _DEFAULT_FITTER.fit_malus(thetas, ys, weights)


def visibility(fit: FitResult) -> Visibility:
    """V = beta / (2 alpha + beta) = (max - min) / (max + min), with first-order error."""
    if fit.degenerate:
        raise UndefinedVisibilityError("visibility is undefined for a degenerate fit")
    if not fit.converged:
        logger.warning("visibility taken from a fit that did not converge (%d evaluations)", fit.iterations)
    total = 2 * fit.alpha + fit.beta
    if total <= 0:
        raise UndefinedVisibilityError(f"max + min must be positive, got {total!r}")
    value = fit.beta / total
    grad = np.array([-2 * fit.beta / total ** 2, 2 * fit.alpha / total ** 2])
    if fit.covariance is not None:
        cov = np.asarray(fit.covariance)[:2, :2]
    else:
        cov = np.diag([fit.stderr[0] ** 2, fit.stderr[1] ** 2])
    stderr = float(math.sqrt(max(grad @ cov @ grad, 0.0)))
    return Visibility(value=float(value), stderr=stderr)
