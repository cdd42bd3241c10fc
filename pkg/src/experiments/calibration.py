"""One-dimensional searches that fix the imperfection magnitudes.

Each search varies a single ImperfectionSet field with scipy's brentq
until one observable matches its measured value.
"""

import logging
import math
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import brentq

from ..errors import CalibrationError
from ..models import ImperfectionSet
from ..optics import CENTER_WAVELENGTH, FILTER_BANDWIDTH, coherence_length
from .campaigns import extrema_curve, summarize_visibility_curve, truth_table

logger = logging.getLogger(__name__)

SEARCH_XTOL = 1e-12
REFLECTIVITY_BRACKET = (0.45, 0.5)
CONTRAST_BRACKET = (0.5, 1.0)
CURVE_THETAS = np.radians(np.arange(0.0, 90.0 + 1e-9, 5.0))

# Measured targets the "paper" preset is tuned to
PBS_TWO_PASS_TRANSMISSION = 0.90
COMPENSATING_PLATE_V = 0.90
RESIDUAL_ASYMMETRY = 0.02
MEAN_ERRONEOUS_OUTCOME = 0.014
CROSSTALK_H_TO_V = 1.8
CENTER_SHIFT_DEG = 1.0
CURVE_VISIBILITY = 0.910


def _solve(objective: Callable[[float], float], low: float, high: float, what: str) -> float:
    f_low, f_high = objective(low), objective(high)
    if f_low == 0:
        return low
    if f_high == 0:
        return high
    if np.sign(f_low) == np.sign(f_high):
        raise CalibrationError(f"{what}: target not bracketed by [{low:g}, {high:g}]")
    return brentq(objective, low, high, xtol=SEARCH_XTOL)


def mean_erroneous_outcome(imp: ImperfectionSet) -> float:
    return float(np.mean(truth_table(imp).erroneous_sums()))


def calibrate_crosstalk(target_error: float, imp: ImperfectionSet = ImperfectionSet(),
                        h_to_v_ratio: float = CROSSTALK_H_TO_V) -> ImperfectionSet:
    """Routing crosstalk (H = ratio * V) giving the requested mean erroneous outcome per row."""
    if target_error == 0:
        return imp.with_changes(crosstalk_H=0.0, crosstalk_V=0.0)
    if h_to_v_ratio <= 0:
        raise CalibrationError(f"H:V crosstalk ratio must be positive, got {h_to_v_ratio!r}")

    def scaled(x: float) -> ImperfectionSet:
        return imp.with_changes(crosstalk_H=h_to_v_ratio * x, crosstalk_V=x)

    upper = min(1.0, 1.0 / h_to_v_ratio)
    x = _solve(lambda x: mean_erroneous_outcome(scaled(x)) - target_error, 0.0, upper, 'crosstalk')
    result = scaled(x)
    logger.info("crosstalk calibrated: H=%.5f V=%.5f", result.crosstalk_H, result.crosstalk_V)
    return result


def fringe_center_deg(imp: ImperfectionSet, thetas: Sequence[float] = CURVE_THETAS) -> float:
    """Peak of the fitted maxima curve of the exact fringe extrema, in degrees."""
    return math.degrees(summarize_visibility_curve(extrema_curve(thetas, imp)).center)


def curve_visibility(imp: ImperfectionSet, thetas: Sequence[float] = CURVE_THETAS) -> float:
    """Mean of the maxima and minima curve visibilities."""
    summary = summarize_visibility_curve(extrema_curve(thetas, imp))
    return (summary.maxima_visibility.value + summary.minima_visibility.value) / 2


def calibrate_reflectivity(target_shift_deg: float, imp: ImperfectionSet = ImperfectionSet(),
                           thetas: Sequence[float] = CURVE_THETAS) -> ImperfectionSet:
    """Beam-splitter reflectivity moving the fringe centre to 45 deg - target shift."""
    def objective(r: float) -> float:
        return 45.0 - fringe_center_deg(imp.with_changes(bs_reflectivity=r), thetas) - target_shift_deg

    r = _solve(objective, *REFLECTIVITY_BRACKET, what='reflectivity')
    logger.info("reflectivity calibrated: r=%.5f", r)
    return imp.with_changes(bs_reflectivity=r)


def calibrate_contrast(target_visibility: float, imp: ImperfectionSet = ImperfectionSet(),
                       thetas: Sequence[float] = CURVE_THETAS) -> ImperfectionSet:
    """Interference contrast giving the requested analyzer-II curve visibility."""
    def objective(gamma0: float) -> float:
        return curve_visibility(imp.with_changes(interference_contrast=gamma0), thetas) - target_visibility

    gamma0 = _solve(objective, *CONTRAST_BRACKET, what='interference contrast')
    logger.info("interference contrast calibrated: %.5f", gamma0)
    return imp.with_changes(interference_contrast=gamma0)


@lru_cache(maxsize=1)
def paper_calibration() -> ImperfectionSet:
    """The imperfection set reproducing the reported gate and analysis figures.

    Fixed inputs: 10 % two-pass PBS loss for H, a plate that takes 10 % of
    V to compensate, a 2 % residual H/V imbalance and the coherence length
    of the 797 nm / 1 nm filter. Searched: crosstalk, reflectivity and
    contrast.
    """
    imp = ImperfectionSet(
        pbs_transmission_H=PBS_TWO_PASS_TRANSMISSION,
        plate_transmission_V=COMPENSATING_PLATE_V,
        residual_asymmetry=RESIDUAL_ASYMMETRY,
        coherence_length=coherence_length(CENTER_WAVELENGTH, FILTER_BANDWIDTH),
    )
    imp = calibrate_crosstalk(MEAN_ERRONEOUS_OUTCOME, imp)
    imp = calibrate_contrast(CURVE_VISIBILITY, imp)
    imp = calibrate_reflectivity(CENTER_SHIFT_DEG, imp)
    # Reflectivity changes the contrast slightly
    imp = calibrate_contrast(CURVE_VISIBILITY, imp)
    return imp
