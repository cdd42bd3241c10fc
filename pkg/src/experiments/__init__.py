from .calibration import (
    calibrate_contrast,
    calibrate_crosstalk,
    calibrate_reflectivity,
    curve_visibility,
    fringe_center_deg,
    paper_calibration,
)
from .campaigns import (
    extrema_curve,
    fringe_extrema,
    ghz_experiment,
    ghz_target,
    interferometer_scan,
    momentum_correlation,
    polarization_scan,
    prepare_output,
    summarize_visibility_curve,
    swap_experiment,
    swap_target,
    truth_table,
    visibility_curve,
)

__all__ = [
    'calibrate_contrast', 'calibrate_crosstalk', 'calibrate_reflectivity', 'curve_visibility',
    'extrema_curve', 'fringe_center_deg', 'fringe_extrema', 'ghz_experiment', 'ghz_target',
    'interferometer_scan', 'momentum_correlation', 'paper_calibration', 'polarization_scan',
    'prepare_output', 'summarize_visibility_curve', 'swap_experiment', 'swap_target',
    'truth_table', 'visibility_curve',
]
