import math

import numpy as np
import pytest

from src.analysis import fit_malus, visibility
from src.errors import CalibrationError
from src.experiments import (
    calibrate_contrast,
    calibrate_crosstalk,
    calibrate_reflectivity,
    curve_visibility,
    extrema_curve,
    fringe_center_deg,
    paper_calibration,
    polarization_scan,
    summarize_visibility_curve,
    truth_table,
)
from src.experiments.calibration import CURVE_THETAS
from src.models import ImperfectionSet

LOSSY = ImperfectionSet(pbs_transmission_H=0.9, plate_transmission_V=0.9, residual_asymmetry=0.02)
SCAN_THETAS = np.radians(np.arange(0.0, 181.0, 10.0))


@pytest.fixture(scope='module')
def paper():
    return paper_calibration()


def test_crosstalk_calibration_hits_the_mean_error():
    imp = calibrate_crosstalk(0.014, LOSSY)
    assert imp.crosstalk_V == pytest.approx(0.010, abs=1e-9)
    assert imp.crosstalk_H == pytest.approx(0.018, abs=1e-9)
    assert imp.pbs_transmission_H == 0.9


def test_zero_crosstalk_target():
    imp = calibrate_crosstalk(0.0, LOSSY)
    assert imp.crosstalk_H == 0.0 and imp.crosstalk_V == 0.0


def test_reflectivity_for_one_degree_shift():
    imp = calibrate_reflectivity(1.0)
    # The maxima peak sits where tan(theta) = sqrt(r / (1 - r))
    assert imp.bs_reflectivity == pytest.approx(math.sin(math.radians(44.0)) ** 2, abs=1e-6)
    assert fringe_center_deg(imp) == pytest.approx(44.0, abs=1e-6)


def test_ideal_centre_is_45_degrees(ideal):
    assert fringe_center_deg(ideal) == pytest.approx(45.0, abs=1e-6)


def test_contrast_calibration_in_ideal_case():
    imp = calibrate_contrast(0.905)
    assert imp.interference_contrast == pytest.approx(0.905, abs=1e-6)
    assert curve_visibility(imp) == pytest.approx(0.905, abs=1e-9)


@pytest.mark.parametrize('search', [
    lambda: calibrate_contrast(1.5),
    lambda: calibrate_reflectivity(10.0),
    lambda: calibrate_crosstalk(0.01, h_to_v_ratio=0.0),
])
def test_unreachable_targets_raise(search):
    with pytest.raises(CalibrationError):
        search()


def test_calibrated_set_truth_table(paper):
    errors = truth_table(paper).erroneous_sums()
    assert np.all((errors >= 0.005) & (errors <= 0.02))
    assert errors.mean() == pytest.approx(0.014, abs=1e-9)


def test_calibrated_set_fixed_inputs(paper):
    assert paper.pbs_transmission_H == 0.9
    assert paper.residual_asymmetry == 0.02
    assert paper.coherence_length == pytest.approx(6.352e-4, rel=1e-3)
    assert 0.45 <= paper.bs_reflectivity <= 0.55


def test_calibrated_set_polarization_visibilities(paper):
    high = visibility(fit_malus(SCAN_THETAS, polarization_scan(SCAN_THETAS, 0, paper).probabilities))
    low = visibility(fit_malus(SCAN_THETAS, polarization_scan(SCAN_THETAS, 1, paper).probabilities))
    assert 0.97 <= high.value <= 0.99
    assert 0.954 <= low.value <= 0.970


def test_calibrated_set_visibility_curve(paper):
    summary = summarize_visibility_curve(extrema_curve(CURVE_THETAS, paper))
    assert 0.900 <= summary.maxima_visibility.value <= 0.916
    assert 0.901 <= summary.minima_visibility.value <= 0.933
    assert 45.0 - math.degrees(summary.center) == pytest.approx(1.0, abs=0.3)
