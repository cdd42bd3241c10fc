import numpy as np
import pytest

from src.errors import NonUnitaryError, PostSelectionError, StateError, TargetError
from src.models import DensityOp, SPTQState, TwoPhotonState, pure_state
from src.optics import CNOT_MATRIX
from src.quantum import (
    apply_unitary,
    concurrence,
    down_conversion_pair,
    embed_operator,
    fidelity,
    ket_from_label,
    overlap,
    partial_trace,
    postselect,
    tensor,
)

SQRT_HALF = 1 / np.sqrt(2)


def random_pure(rng, dim):
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return pure_state(v, normalize=True)


@pytest.mark.parametrize('label,index,dim', [
    ('00', 0, 4),
    ('HT', 0, 4),
    ('VB', 3, 4),
    ('HL', 1, 4),
    ('0110', 6, 16),
    ('HBVT', 6, 16),
])
def test_ket_from_label(label, index, dim):
    state = ket_from_label(label)
    assert state.dimension == dim
    expected = np.zeros(dim)
    expected[index] = 1
    np.testing.assert_array_equal(state.amplitudes, expected)


def test_ket_from_label_state_classes():
    assert isinstance(ket_from_label('01'), SPTQState)
    assert isinstance(ket_from_label('0101'), TwoPhotonState)


@pytest.mark.parametrize('label', ['0', '012', 'XT', 'TH', '01101'])
def test_ket_from_label_rejects_bad_labels(label):
    with pytest.raises(StateError):
        ket_from_label(label)


def test_state_must_be_normalized():
    with pytest.raises(StateError):
        pure_state([1, 1, 0, 0])


def test_state_is_immutable():
    state = ket_from_label('00')
    with pytest.raises(ValueError):
        state.amplitudes[0] = 0


def test_tensor_product_input_state():
    control = np.array([SQRT_HALF, SQRT_HALF])
    target = np.array([1, 0])
    state = tensor(control, target)
    np.testing.assert_allclose(state.amplitudes, [SQRT_HALF, 0, SQRT_HALF, 0], atol=1e-15)


def test_tensor_of_photons():
    state = tensor(ket_from_label('01'), ket_from_label('10'))
    assert overlap(state, ket_from_label('0110')) == pytest.approx(1.0)


def test_tensor_rejects_mixed_dimensions():
    with pytest.raises(StateError):
        tensor(ket_from_label('01'), np.array([1, 0]))


def test_overlap_with_analysis_states(bell_output):
    psi1 = tensor(np.array([1.0, 0.0]), np.array([1.0, 0.0]))
    psi2 = tensor(np.array([1.0, 0.0]), np.array([0.0, 1.0]))
    assert abs(overlap(psi1, bell_output)) == pytest.approx(SQRT_HALF, abs=1e-15)
    assert abs(overlap(psi2, bell_output)) == pytest.approx(0.0, abs=1e-15)


def test_overlap_is_conjugate_symmetric(rng):
    for _ in range(20):
        a, b = random_pure(rng, 4), random_pure(rng, 4)
        assert overlap(a, b) == pytest.approx(np.conj(overlap(b, a)), abs=1e-14)


def test_overlap_dimension_mismatch():
    with pytest.raises(StateError):
        overlap(ket_from_label('00'), ket_from_label('0000'))


def test_apply_unitary_cnot_on_basis():
    out = apply_unitary(CNOT_MATRIX, ket_from_label('10'), [0, 1])
    assert fidelity(out, ket_from_label('11')) == pytest.approx(1.0)


def test_apply_unitary_on_signal_of_pair():
    out = apply_unitary(CNOT_MATRIX, ket_from_label('0110'), [0, 1])
    assert fidelity(out, ket_from_label('0110')) == pytest.approx(1.0)


def test_apply_unitary_on_idler_of_pair():
    out = apply_unitary(CNOT_MATRIX, ket_from_label('0010'), [2, 3])
    assert fidelity(out, ket_from_label('0011')) == pytest.approx(1.0)


def test_apply_unitary_preserves_norm_and_trace(rng):
    q, _ = np.linalg.qr(rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4)))
    state = random_pure(rng, 16)
    out = apply_unitary(q, state, [3, 1])
    assert np.vdot(out.amplitudes, out.amplitudes).real == pytest.approx(1.0, abs=1e-12)
    rho = DensityOp.from_state(state)
    out_rho = apply_unitary(q, rho, [3, 1])
    assert np.trace(out_rho.matrix).real == pytest.approx(1.0, abs=1e-12)
    np.testing.assert_allclose(out_rho.matrix, DensityOp.from_state(out).matrix, atol=1e-12)


def test_apply_unitary_identity():
    state = ket_from_label('0110')
    out = apply_unitary(np.eye(2), state, [2])
    np.testing.assert_allclose(out.amplitudes, state.amplitudes)


def test_apply_unitary_rejects_non_unitary():
    with pytest.raises(NonUnitaryError):
        apply_unitary(np.array([[1, 1], [0, 1]]), ket_from_label('00'), [0])


@pytest.mark.parametrize('targets', [[0, 0], [4], [-1]])
def test_apply_unitary_rejects_bad_targets(targets):
    op = np.eye(2 ** len(targets))
    with pytest.raises(TargetError):
        apply_unitary(op, ket_from_label('0000'), targets)


def test_embed_operator_orders_targets():
    # CNOT with control on qubit 1 and target on qubit 0 of a photon is the M-CNOT
    full = embed_operator(CNOT_MATRIX, [1, 0], 2)
    out = full @ ket_from_label('01').amplitudes
    np.testing.assert_allclose(out, ket_from_label('11').amplitudes)


def momentum_projector(m):
    p = np.zeros((2, 2))
    p[m, m] = 1
    return np.kron(np.eye(2), p)


def test_postselect_keeps_matching_state():
    probability, state = postselect(momentum_projector(0), DensityOp.from_state(ket_from_label('00')))
    assert probability == pytest.approx(1.0)
    assert fidelity(state, ket_from_label('00')) == pytest.approx(1.0)


def test_postselect_annihilation():
    inp = tensor(np.array([SQRT_HALF, SQRT_HALF]), np.array([1, 0]))
    with pytest.raises(PostSelectionError):
        postselect(momentum_projector(1), DensityOp.from_state(inp), 'M=1')


def test_postselect_bell_output(bell_output):
    probability, state = postselect(momentum_projector(0), DensityOp.from_state(bell_output))
    assert probability == pytest.approx(0.5)
    assert fidelity(state, ket_from_label('00')) == pytest.approx(1.0)


def test_postselect_pure_fast_path(bell_output):
    probability, state = postselect(momentum_projector(1), bell_output)
    assert isinstance(state, SPTQState)
    assert probability == pytest.approx(0.5)
    assert fidelity(state, ket_from_label('11')) == pytest.approx(1.0)


def test_postselect_complete_set_sums_to_one(rng):
    rho = DensityOp.from_state(random_pure(rng, 4))
    total = 0.0
    for index in range(4):
        projector = np.zeros((4, 4))
        projector[index, index] = 1
        try:
            total += postselect(projector, rho)[0]
        except PostSelectionError:
            pass
    assert total == pytest.approx(1.0, abs=1e-12)


def test_postselect_rejects_expanding_operator():
    with pytest.raises(StateError):
        postselect(2 * np.eye(4), ket_from_label('00'))


def test_partial_trace_of_pair_is_mixed(pair_state):
    signal = partial_trace(pair_state, [0, 1])
    np.testing.assert_allclose(np.diag(signal.matrix).real, [0.5, 0.5, 0, 0], atol=1e-15)
    assert signal.purity() == pytest.approx(0.5)


def test_partial_trace_density_matches_pure(rng):
    state = random_pure(rng, 16)
    from_pure = partial_trace(state, [1, 2])
    from_rho = partial_trace(DensityOp.from_state(state), [1, 2])
    np.testing.assert_allclose(from_pure.matrix, from_rho.matrix, atol=1e-12)


def test_concurrence_examples(bell_output, diagonal_mixture):
    assert concurrence(bell_output) == pytest.approx(1.0, abs=1e-10)
    assert concurrence(diagonal_mixture) == pytest.approx(0.0, abs=1e-10)
    partial = pure_state([np.cos(np.pi / 8), 0, 0, np.sin(np.pi / 8)])
    assert concurrence(partial) == pytest.approx(np.sin(np.pi / 4), abs=1e-10)


def test_concurrence_of_product_state():
    assert concurrence(ket_from_label('01')) == pytest.approx(0.0, abs=1e-10)


def test_concurrence_matches_sin_two_theta(rng):
    for theta in rng.uniform(0, np.pi, size=100):
        state = pure_state([np.cos(theta), 0, 0, np.sin(theta)])
        assert concurrence(DensityOp.from_state(state)) == pytest.approx(abs(np.sin(2 * theta)), abs=1e-10)


def test_concurrence_needs_two_qubits(pair_state):
    with pytest.raises(StateError):
        concurrence(pair_state)


def test_fidelity_examples(pair_state):
    assert fidelity(DensityOp.from_state(pair_state), pair_state) == pytest.approx(1.0)
    assert fidelity(DensityOp.from_state(ket_from_label('0110')), pair_state) == pytest.approx(0.5)
    assert fidelity(DensityOp.maximally_mixed(16), pair_state) == pytest.approx(1 / 16)


def test_down_conversion_pair(pair_state):
    assert fidelity(down_conversion_pair(), pair_state) == pytest.approx(1.0)


def test_density_op_validation():
    with pytest.raises(StateError):
        DensityOp(np.diag([0.5, 0.6, 0, 0]))
    with pytest.raises(StateError):
        DensityOp(np.diag([1.5, -0.5, 0, 0]))
    with pytest.raises(StateError):
        DensityOp(np.array([[0.5, 0.5], [0.0, 0.5]]))


def test_mixture_weights_must_sum_to_one():
    with pytest.raises(StateError):
        DensityOp.mixture([ket_from_label('00'), ket_from_label('11')], [0.5, 0.6])
