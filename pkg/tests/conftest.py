import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from src.models import DensityOp, ImperfectionSet, pure_state  # noqa: E402
from src.quantum import ket_from_label  # noqa: E402

SQRT_HALF = 1 / np.sqrt(2)


@pytest.fixture
def ideal():
    return ImperfectionSet()


@pytest.fixture
def bell_output():
    """(|00> + |11>)/sqrt(2), the gate output for a (H + V)/sqrt(2) control."""
    return pure_state([SQRT_HALF, 0, 0, SQRT_HALF])


@pytest.fixture
def diagonal_mixture():
    """(|00><00| + |11><11|)/2, the classical look-alike of the Bell output."""
    return DensityOp.mixture([ket_from_label('00'), ket_from_label('11')], [0.5, 0.5])


@pytest.fixture
def pair_state():
    amplitudes = np.zeros(16, dtype=complex)
    amplitudes[0b0110] = amplitudes[0b0011] = SQRT_HALF
    return pure_state(amplitudes)


@pytest.fixture
def rng():
    return np.random.Generator(np.random.PCG64(12345))


@pytest.fixture
def out_dir(tmp_path):
    path = tmp_path / 'results'
    path.mkdir()
    return path
