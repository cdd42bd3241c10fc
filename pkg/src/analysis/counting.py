"""Poisson coincidence counting on top of exact detection probabilities.

Each scan point gets its own generator seeded with base seed XOR point
index, so a point's count does not depend on which other points were
sampled or in which order.
"""

import logging
from typing import Optional, Sequence

import numpy as np

from ..errors import ConfigError
from ..models import CountingConfig

logger = logging.getLogger(__name__)

RNG_ALGORITHM = 'PCG64'
# Accidentals above this fraction of the true rate are no longer negligible
NEGLIGIBLE_ACCIDENTAL_FRACTION = 0.01


def make_rng(seed: int) -> np.random.Generator:
    """The named, seedable generator every count is drawn from."""
    return np.random.Generator(np.random.PCG64(seed))


def derive_seed(base: int, index: int) -> int:
    """Seed of scan point `index`: base XOR index."""
    if base < 0 or index < 0:
        raise ConfigError('counting.rng_seed', 'seeds and point indices must be non-negative')
    return base ^ index


def accidental_rate(singles_signal: float, singles_idler: float, window: float) -> float:
    """R_acc = R_s * R_i * tau."""
    if singles_signal < 0 or singles_idler < 0 or window < 0:
        raise ConfigError('counting', 'rates and window must be non-negative')
    return singles_signal * singles_idler * window


def accidental_fraction(cfg: CountingConfig, true_rate: Optional[float] = None) -> float:
    """Accidental rate relative to the true coincidence rate (default: at probability one)."""
    rate = cfg.true_coincidence_rate if true_rate is None else true_rate
    accidentals = accidental_rate(*cfg.singles_rates, cfg.coincidence_window)
    if rate <= 0:
        return float('inf') if accidentals > 0 else 0.0
    fraction = accidentals / rate
    if fraction > NEGLIGIBLE_ACCIDENTAL_FRACTION:
        logger.warning("accidental coincidences are %.2f%% of the true rate", 100 * fraction)
    return fraction


def mean_counts(prob: float, cfg: CountingConfig) -> float:
    """Expected coincidences per point: true plus accidental, over the integration time."""
    if not 0.0 <= prob <= 1.0 + 1e-12:
        raise ConfigError('probability', f'must be in [0, 1], got {prob!r}')
    accidentals = accidental_rate(*cfg.singles_rates, cfg.coincidence_window)
    return (min(prob, 1.0) * cfg.true_coincidence_rate + accidentals) * cfg.integration_time


def sample_counts(prob: float, cfg: CountingConfig, rng: Optional[np.random.Generator] = None) -> int:
    """One Poisson coincidence count; deterministic in cfg.rng_seed when no rng is given."""
    if rng is None:
        rng = make_rng(cfg.rng_seed)
    return int(rng.poisson(mean_counts(prob, cfg)))


def sample_trace(probs: Sequence[float], cfg: CountingConfig, offset: int = 0) -> np.ndarray:
    """Counts for a whole scan, point i seeded with derive_seed(seed, offset + i)."""
    counts = np.empty(len(probs), dtype=np.int64)
    for i, prob in enumerate(probs):
        seed = derive_seed(cfg.rng_seed, offset + i)
        counts[i] = sample_counts(prob, cfg, make_rng(seed))
    logger.debug("sampled %d point(s) from seed %d, offset %d", len(counts), cfg.rng_seed, offset)
    return counts
