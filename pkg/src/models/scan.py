import math
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from ..errors import StateError
from .fit_result import FitResult, Visibility
from .states import basis_label

ROW_SUM_TOL = 1e-9


@dataclass(frozen=True)
class ScanPoint:
    """One point of a scan: control value and what was observed there."""

    control: float                  # theta_A in radians, or scan time in seconds
    probability: float              # detection probability given the preparation succeeded
    success_probability: float = 1.0
    count: Optional[int] = None

    def __post_init__(self):
        for name in ('probability', 'success_probability'):
            value = getattr(self, name)
            if not -1e-12 <= value <= 1.0 + 1e-12:
                raise StateError(f"{name} {value!r} outside [0, 1]")

    @property
    def coincidence_probability(self) -> float:
        """Probability per emitted pair: preparation success times detection."""
        return self.probability * self.success_probability

    def to_dict(self) -> dict:
        return {
            'control': self.control,
            'probability': self.probability,
            'success_probability': self.success_probability,
            'count': self.count,
        }


@dataclass(frozen=True)
class ScanTrace:
    """Sampled detection probabilities (and optional counts) versus a control variable."""

    control_name: str
    points: List[ScanPoint] = field(default_factory=list)
    label: str = ''

    @property
    def controls(self) -> np.ndarray:
        return np.array([p.control for p in self.points], dtype=float)

    @property
    def probabilities(self) -> np.ndarray:
        return np.array([p.probability for p in self.points], dtype=float)

    @property
    def counts(self) -> Optional[np.ndarray]:
        if not self.points or any(p.count is None for p in self.points):
            return None
        return np.array([p.count for p in self.points], dtype=float)

    @property
    def has_counts(self) -> bool:
        return self.counts is not None

    def observations(self) -> np.ndarray:
        """Counts when sampled, exact probabilities otherwise."""
        counts = self.counts
        return counts if counts is not None else self.probabilities

    def to_dict(self) -> dict:
        return {
            'control_name': self.control_name,
            'label': self.label,
            'points': [p.to_dict() for p in self.points],
        }


@dataclass(frozen=True, eq=False)
class TruthTable:
    """Output probabilities indexed by input basis state x projected output.

    `probabilities` rows are conditioned on the photon surviving the gate;
    `rates` multiply each row by the post-selection success probability.
    """

    probabilities: np.ndarray
    rates: np.ndarray
    counts: Optional[np.ndarray] = None

    def __post_init__(self):
        probs = np.asarray(self.probabilities, dtype=float)
        if probs.shape != (4, 4):
            raise StateError(f"truth table must be 4x4, got {probs.shape}")
        if np.any(np.abs(probs.sum(axis=1) - 1.0) > ROW_SUM_TOL):
            raise StateError("truth table rows must sum to 1")

    @property
    def labels(self) -> List[str]:
        return [basis_label(i, 2) for i in range(4)]

    def expected_output(self, row: int) -> int:
        """CNOT image of input `row` (polarization control, momentum target)."""
        return row ^ 1 if row >= 2 else row

    def erroneous_sums(self) -> np.ndarray:
        """Per-row probability of outcomes other than the CNOT image."""
        probs = np.asarray(self.probabilities)
        return np.array([1.0 - probs[r, self.expected_output(r)] for r in range(4)])

    def to_dict(self) -> dict:
        return {
            'labels': self.labels,
            'probabilities': np.asarray(self.probabilities).tolist(),
            'rates': np.asarray(self.rates).tolist(),
            'counts': None if self.counts is None else np.asarray(self.counts).astype(int).tolist(),
            'erroneous_sums': self.erroneous_sums().tolist(),
        }


@dataclass(frozen=True)
class FringeExtrema:
    """Fitted maximum and minimum of one interferometer scan."""

    theta: float
    maximum: float
    minimum: float
    maximum_stderr: float = 0.0
    minimum_stderr: float = 0.0
    fit: Optional[FitResult] = None

    @property
    def converged(self) -> bool:
        return self.fit is None or self.fit.converged

    def to_dict(self) -> dict:
        return {
            'theta_deg': math.degrees(self.theta),
            'maximum': self.maximum,
            'minimum': self.minimum,
            'maximum_stderr': self.maximum_stderr,
            'minimum_stderr': self.minimum_stderr,
            'converged': self.converged,
        }


@dataclass(frozen=True)
class VisibilityCurve:
    """Fringe maxima and minima versus analysis angle."""

    points: List[FringeExtrema]

    @property
    def thetas(self) -> np.ndarray:
        return np.array([p.theta for p in self.points], dtype=float)

    @property
    def maxima(self) -> np.ndarray:
        return np.array([p.maximum for p in self.points], dtype=float)

    @property
    def minima(self) -> np.ndarray:
        return np.array([p.minimum for p in self.points], dtype=float)

    def to_dict(self) -> dict:
        return {'points': [p.to_dict() for p in self.points]}


@dataclass(frozen=True)
class CurveSummary:
    """Malus fits of the maxima and minima curves and where the fringes are centred.

    `center` is the peak of the fitted maxima curve and `minima_center` the
    trough of the fitted minima curve, both in radians within [0, pi).
    """

    maxima_fit: FitResult
    minima_fit: FitResult
    maxima_visibility: Visibility
    minima_visibility: Visibility
    center: float
    minima_center: float

    def to_dict(self) -> dict:
        return {
            'maxima_fit': self.maxima_fit.to_dict(),
            'minima_fit': self.minima_fit.to_dict(),
            'maxima_visibility': self.maxima_visibility.to_dict(),
            'minima_visibility': self.minima_visibility.to_dict(),
            'center_deg': math.degrees(self.center),
            'minima_center_deg': math.degrees(self.minima_center),
        }
