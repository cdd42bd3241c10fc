import math

import numpy as np
import pytest

from src.bench import Pipeline
from src.enums import ElementKind
from src.errors import ElementError, PostSelectionError, StateError
from src.models import DensityOp, Element, ImperfectionSet, pure_state
from src.optics import (
    CNOT_MATRIX,
    MCNOT_MATRIX,
    SWAP_MATRIX,
    analyzer_I,
    analyzer_II,
    analyzer_II_prob,
    attenuator,
    beam_block,
    coherence_envelope,
    coherence_length,
    crosstalk_cnot,
    detection_probability,
    hwp,
    mcnot,
    pcnot,
)
from src.quantum import down_conversion_pair, fidelity, ket_from_label, tensor

SQRT_HALF = 1 / np.sqrt(2)


def run_single(element, state):
    return Pipeline([element], state).run()


def test_cnot_gates_are_self_inverse():
    np.testing.assert_array_equal(CNOT_MATRIX @ CNOT_MATRIX, np.eye(4))
    np.testing.assert_array_equal(MCNOT_MATRIX @ MCNOT_MATRIX, np.eye(4))


def test_swap_from_three_cnots():
    product = pcnot().matrix @ mcnot().matrix @ pcnot().matrix
    np.testing.assert_allclose(product, SWAP_MATRIX, atol=1e-12)


@pytest.mark.parametrize('label,expected', [('00', '00'), ('01', '01'), ('10', '11'), ('11', '10')])
def test_pcnot_truth_table(label, expected):
    out = run_single(pcnot(), ket_from_label(label)).state
    assert fidelity(out, ket_from_label(expected)) == pytest.approx(1.0)


@pytest.mark.parametrize('label,expected', [('00', '00'), ('01', '11'), ('10', '10'), ('11', '01')])
def test_mcnot_truth_table(label, expected):
    out = run_single(mcnot(), ket_from_label(label)).state
    assert fidelity(out, ket_from_label(expected)) == pytest.approx(1.0)


def test_pcnot_entangles_superposed_control(bell_output):
    inp = tensor(np.array([SQRT_HALF, SQRT_HALF]), np.array([1.0, 0.0]))
    out = run_single(pcnot(), inp).state
    assert fidelity(out, bell_output) == pytest.approx(1.0)


def test_mcnot_on_both_photons_gives_ghz():
    elements = [mcnot(), mcnot().shifted(2)]
    out = Pipeline(elements, down_conversion_pair()).run().state
    ghz = np.zeros(16)
    ghz[0b1110] = ghz[0b0001] = SQRT_HALF
    assert fidelity(out, pure_state(ghz)) == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize('theta,expected', [
    (0.0, [1.0, 0.0]),
    (math.pi / 8, [SQRT_HALF, SQRT_HALF]),
    (math.pi / 4, [0.0, 1.0]),
])
def test_hwp_on_horizontal(theta, expected):
    np.testing.assert_allclose(hwp(theta).matrix @ np.array([1.0, 0.0]), expected, atol=1e-15)


def test_hwp_is_real_unitary(rng):
    for theta in rng.uniform(-math.pi, math.pi, size=50):
        m = hwp(theta).matrix
        assert np.all(m.imag == 0)
        np.testing.assert_allclose(m @ m.conj().T, np.eye(2), atol=1e-14)


def test_hwp_label_is_in_degrees():
    assert hwp(math.pi / 8).label == 'HWP(22.5deg)'


def test_unit_attenuator_changes_nothing(rng):
    v = rng.normal(size=4) + 1j * rng.normal(size=4)
    state = pure_state(v, normalize=True)
    run = run_single(attenuator(1.0, 1.0), state)
    assert run.success_probability == pytest.approx(1.0)
    assert fidelity(run.state, state) == pytest.approx(1.0)


def test_lossy_attenuator_renormalizes():
    inp = tensor(np.array([SQRT_HALF, SQRT_HALF]), np.array([1.0, 0.0]))
    run = run_single(attenuator(math.sqrt(0.9), 1.0), inp)
    assert abs(run.state.amplitudes[0]) ** 2 == pytest.approx(0.9 / 1.9)
    assert run.success_probability == pytest.approx(0.95)


def test_attenuator_keeps_density_operator_valid(rng):
    v = rng.normal(size=4) + 1j * rng.normal(size=4)
    rho = DensityOp.mixture([pure_state(v, normalize=True), ket_from_label('11')], [0.7, 0.3])
    out = run_single(attenuator(0.6, 0.9), rho).state
    np.testing.assert_allclose(out.matrix, out.matrix.conj().T, atol=1e-14)
    assert np.linalg.eigvalsh(out.matrix).min() > -1e-12


def test_blocking_all_horizontal_light_annihilates():
    with pytest.raises(PostSelectionError):
        run_single(attenuator(0.0, 1.0), ket_from_label('00'))


@pytest.mark.parametrize('t_H,t_V', [(-0.1, 1.0), (1.0, 1.5)])
def test_attenuator_rejects_gain(t_H, t_V):
    with pytest.raises(ElementError):
        attenuator(t_H, t_V)


def test_block_idler_top_selects_pair_half():
    run = run_single(beam_block(0, 'idler'), down_conversion_pair())
    assert run.success_probability == pytest.approx(0.5)
    assert fidelity(run.state, ket_from_label('0011')) == pytest.approx(1.0)


def test_block_idler_bottom_annihilates_matching_state():
    with pytest.raises(PostSelectionError):
        run_single(beam_block(1, 'idler'), ket_from_label('0011'))


def test_block_signal_bottom_annihilates_matching_state():
    with pytest.raises(PostSelectionError):
        run_single(beam_block(1), ket_from_label('0110'))


def test_beam_block_targets():
    assert beam_block(0).targets == (1,)
    assert beam_block(0, 'idler').targets == (3,)
    with pytest.raises(ElementError):
        beam_block(2)


@pytest.mark.parametrize('theta,m,expected', [
    (0.0, 0, 0.5),
    (math.pi / 2, 0, 0.0),
    (math.pi / 4, 1, 0.25),
])
def test_analyzer_one_on_bell_output(bell_output, theta, m, expected):
    assert detection_probability(analyzer_I(theta, m), bell_output) == pytest.approx(expected, abs=1e-15)


def test_analyzers_are_terminal():
    assert analyzer_I(0.0, 0).terminal
    assert analyzer_II(0.0, 0.0, ImperfectionSet()).terminal
    with pytest.raises(ElementError):
        analyzer_I(0.0, 2)


@pytest.mark.parametrize('theta,expected', [(math.pi / 4, 0.5), (-math.pi / 4, 0.0)])
def test_analyzer_two_on_bell_output(bell_output, ideal, theta, expected):
    assert analyzer_II_prob(bell_output, theta, 0.0, ideal) == pytest.approx(expected, abs=1e-14)


def test_analyzer_two_washes_out_beyond_coherence_length(bell_output):
    imp = ImperfectionSet(coherence_length=1e-6)
    assert analyzer_II_prob(bell_output, math.pi / 4, 0.0, imp, path_mismatch=1e-3) == pytest.approx(0.25)


def test_analyzer_two_matches_projection_for_ideal_settings(rng, ideal):
    for _ in range(100):
        v = rng.normal(size=4) + 1j * rng.normal(size=4)
        state = pure_state(v, normalize=True)
        theta, phi = rng.uniform(0, math.pi), rng.uniform(0, 2 * math.pi)
        projection = np.kron([math.cos(theta), math.sin(theta)],
                             np.array([1.0, np.exp(1j * phi)]) / math.sqrt(2))
        expected = abs(np.vdot(projection, state.amplitudes)) ** 2
        assert analyzer_II_prob(state, theta, phi, ideal) == pytest.approx(expected, abs=1e-12)


def test_analyzer_two_fringe_visibility(rng):
    imp = ImperfectionSet(bs_reflectivity=0.45, interference_contrast=0.9)
    v = rng.normal(size=4) + 1j * rng.normal(size=4)
    rho = DensityOp.from_state(pure_state(v, normalize=True))
    theta = 0.4
    # Momentum block after projecting the polarization on theta
    project = np.kron([[math.cos(theta), math.sin(theta)]], np.eye(2))
    block = project @ rho.matrix @ project.T
    r = imp.bs_reflectivity
    expected = (2 * math.sqrt(r * (1 - r)) * imp.interference_contrast * abs(block[0, 1])
                / ((1 - r) * block[0, 0].real + r * block[1, 1].real))

    ps = np.array([analyzer_II_prob(rho, theta, phi, imp) for phi in np.linspace(0, 2 * math.pi, 3601)])
    swept = (ps.max() - ps.min()) / (ps.max() + ps.min())
    assert swept == pytest.approx(expected, rel=1e-4)


def test_analyzer_two_needs_single_photon(pair_state, ideal):
    with pytest.raises(StateError):
        analyzer_II_prob(pair_state, 0.0, 0.0, ideal)


@pytest.mark.parametrize('lambda_0,delta_lambda,expected', [
    (797e-9, 1e-9, 6.352e-4),
    (800e-9, 800e-9, 8e-7),
])
def test_coherence_length(lambda_0, delta_lambda, expected):
    assert coherence_length(lambda_0, delta_lambda) == pytest.approx(expected, rel=1e-3)


def test_coherence_length_scales_with_inverse_bandwidth():
    assert coherence_length(797e-9, 0.5e-9) == pytest.approx(2 * coherence_length(797e-9, 1e-9))


def test_coherence_length_rejects_zero_bandwidth():
    with pytest.raises(ElementError):
        coherence_length(797e-9, 0.0)


def test_coherence_envelope():
    imp = ImperfectionSet(coherence_length=2e-4, interference_contrast=0.9)
    assert coherence_envelope(0.0, imp) == pytest.approx(0.9)
    assert coherence_envelope(2e-4, imp) == pytest.approx(0.9 / math.e)


def test_crosstalk_channel_is_trace_preserving():
    element = crosstalk_cnot(0.018, 0.010)
    assert element.kind is ElementKind.CHANNEL
    total = sum(k.conj().T @ k for k in element.operators)
    np.testing.assert_allclose(total, np.eye(4), atol=1e-14)


@pytest.mark.parametrize('label,wrong,p', [('00', '01', 0.018), ('01', '00', 0.018),
                                           ('10', '10', 0.010), ('11', '11', 0.010)])
def test_crosstalk_flips_the_target(label, wrong, p):
    out = run_single(crosstalk_cnot(0.018, 0.010), ket_from_label(label)).state
    assert fidelity(out, ket_from_label(wrong)) == pytest.approx(p)


def test_element_rejects_non_unitary_payload():
    with pytest.raises(ElementError):
        Element(ElementKind.UNITARY, (2 * np.eye(2),), (0,), 'bad')


def test_element_rejects_shape_mismatch():
    with pytest.raises(ElementError):
        Element(ElementKind.UNITARY, (np.eye(2),), (0, 1), 'bad')
