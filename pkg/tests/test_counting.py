import numpy as np
import pytest

from src.analysis import (
    RNG_ALGORITHM,
    accidental_fraction,
    accidental_rate,
    derive_seed,
    make_rng,
    mean_counts,
    sample_counts,
    sample_trace,
)
from src.errors import ConfigError
from src.models import CountingConfig

NO_ACCIDENTALS = CountingConfig(singles_rates=(0.0, 0.0))


def test_accidental_rate_at_operating_point():
    assert accidental_rate(1e5, 1e5, 1e-9) == pytest.approx(10.0)
    assert accidental_rate(0.0, 1e5, 1e-9) == 0.0


def test_accidental_rate_is_linear_in_window():
    assert accidental_rate(1e5, 2e4, 2e-9) == pytest.approx(2 * accidental_rate(1e5, 2e4, 1e-9))


def test_default_accidentals_are_negligible():
    fraction = accidental_fraction(CountingConfig())
    assert fraction < 0.01
    assert accidental_fraction(CountingConfig(), true_rate=1000.0) == pytest.approx(0.01)


def test_large_accidental_fraction_logs_a_warning(caplog):
    cfg = CountingConfig(pair_rate=100.0)
    with caplog.at_level('WARNING'):
        assert accidental_fraction(cfg) == pytest.approx(0.1)
    assert 'accidental' in caplog.text


def test_mean_counts():
    cfg = CountingConfig(pair_rate=4000.0, integration_time=2.0)
    assert mean_counts(0.05, cfg) == pytest.approx((0.05 * 4000.0 + 10.0) * 2.0)
    assert mean_counts(1.0, NO_ACCIDENTALS) == pytest.approx(4000.0)


def test_zero_probability_without_accidentals_gives_zero():
    assert sample_counts(0.0, NO_ACCIDENTALS) == 0


def test_same_seed_gives_same_count():
    cfg = CountingConfig(rng_seed=42)
    assert sample_counts(0.3, cfg) == sample_counts(0.3, cfg)


def test_derive_seed_is_xor():
    assert derive_seed(0b1010, 0b0110) == 0b1100
    with pytest.raises(ConfigError):
        derive_seed(-1, 0)


def test_poisson_moments():
    cfg = CountingConfig(pair_rate=400.0, singles_rates=(0.0, 0.0))
    rng = make_rng(7)
    draws = np.array([sample_counts(1.0, cfg, rng) for _ in range(10_000)])
    sigma = np.sqrt(400.0 / draws.size)
    assert abs(draws.mean() - 400.0) < 3 * sigma
    # Var of the sample variance of a Poisson(mu) is about 2 mu^2 / N
    assert abs(draws.var(ddof=1) - 400.0) < 5 * np.sqrt(2 * 400.0 ** 2 / draws.size)


def test_trace_points_do_not_depend_on_neighbours():
    cfg = CountingConfig(rng_seed=2005)
    full = sample_trace([0.1, 0.2, 0.3, 0.4], cfg)
    tail = sample_trace([0.3, 0.4], cfg, offset=2)
    np.testing.assert_array_equal(full[2:], tail)
    assert full.dtype == np.int64


def test_trace_is_reproducible():
    cfg = CountingConfig(rng_seed=123)
    probs = np.linspace(0, 0.5, 25)
    np.testing.assert_array_equal(sample_trace(probs, cfg), sample_trace(probs, cfg))


def test_different_seeds_differ():
    probs = [0.5] * 50
    a = sample_trace(probs, CountingConfig(rng_seed=1))
    b = sample_trace(probs, CountingConfig(rng_seed=2 ** 40))
    assert not np.array_equal(a, b)


def test_rng_algorithm_is_recorded():
    assert RNG_ALGORITHM == 'PCG64'
    assert isinstance(make_rng(0).bit_generator, np.random.PCG64)


@pytest.mark.parametrize('data,field', [
    ({'integration_time': -1.0}, 'counting.integration_time'),
    ({'coincidence_window': 0.0}, 'counting.coincidence_window'),
    ({'detection_efficiency': [1.2, 1.0]}, 'counting.detection_efficiency'),
    ({'singles_rates': [1e5]}, 'counting.singles_rates'),
    ({'rng_seed': -3}, 'counting.rng_seed'),
    ({'rng_seed': 1.5}, 'counting.rng_seed'),
    ({'pair_rate': 'fast'}, 'counting.pair_rate'),
    ({'dead_time': 1e-8}, 'counting.dead_time'),
    ({'pair_rate': float('nan')}, 'counting.pair_rate'),
    ({'integration_time': float('inf')}, 'counting.integration_time'),
    ({'singles_rates': [1e5, float('nan')]}, 'counting.singles_rates'),
])
def test_counting_config_validation(data, field):
    with pytest.raises(ConfigError) as excinfo:
        CountingConfig.from_dict(data)
    assert excinfo.value.field == field


def test_non_finite_rates_are_rejected_on_construction():
    with pytest.raises(ConfigError) as excinfo:
        CountingConfig(pair_rate=float('nan'))
    assert excinfo.value.field == 'counting.pair_rate'
    with pytest.raises(ConfigError) as excinfo:
        CountingConfig(coincidence_window=float('inf'))
    assert excinfo.value.field == 'counting.coincidence_window'
