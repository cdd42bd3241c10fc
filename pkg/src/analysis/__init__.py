from .counting import (
    RNG_ALGORITHM,
    accidental_fraction,
    accidental_rate,
    derive_seed,
    make_rng,
    mean_counts,
    sample_counts,
    sample_trace,
)
from .fitting import CurveFitter, fit_malus, fit_sin_squared, sin_squared, visibility

__all__ = [
    'RNG_ALGORITHM', 'CurveFitter', 'accidental_fraction', 'accidental_rate', 'derive_seed',
    'fit_malus', 'fit_sin_squared', 'make_rng', 'mean_counts', 'sample_counts', 'sample_trace',
    'sin_squared', 'visibility',
]
