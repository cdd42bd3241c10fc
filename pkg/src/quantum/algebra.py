"""State-vector and density-operator algebra over the SPTQ bases.

All functions are pure: they never modify their inputs and return new
immutable values. Pure states stay pure wherever possible; a DensityOp
is produced only when a mixture is actually needed.
"""

import logging
from typing import Sequence, Tuple, Union

import numpy as np

from ..errors import NonUnitaryError, PostSelectionError, StateError, TargetError
from ..models.states import (
    DEFAULT_CONVENTION,
    BasisConvention,
    DensityOp,
    PureState,
    pure_state,
)

logger = logging.getLogger(__name__)

State = Union[PureState, DensityOp]

UNITARY_TOL = 1e-10
PROJECTOR_TOL = 1e-10
ANNIHILATION_THRESHOLD = 1e-15
# Eigenvalues below this are round-off when taking matrix square roots
EIGENVALUE_FLOOR = 1e-12

_SIGMA_Y = np.array([[0, -1j], [1j, 0]])
_SPIN_FLIP = np.kron(_SIGMA_Y, _SIGMA_Y)


def ket_from_label(label: str, convention: BasisConvention = DEFAULT_CONVENTION) -> PureState:
    """Basis state named by a logical ("0110") or physical ("HT") label.

    Even positions are polarization qubits (H/V), odd positions momentum
    qubits (T/B at the gate input, R/L at its output).
    """
    if len(label) not in (2, 4):
        raise StateError(f"label '{label}' must have 2 or 4 characters")
    index = 0
    for position, char in enumerate(label):
        index = (index << 1) | convention.bit_for(char, position)
    amplitudes = np.zeros(2 ** len(label), dtype=complex)
    amplitudes[index] = 1.0
    return pure_state(amplitudes)


def _amplitudes(state: Union[PureState, np.ndarray]) -> np.ndarray:
    if isinstance(state, PureState):
        return state.amplitudes
    return np.asarray(state, dtype=complex).reshape(-1)


def tensor(a: Union[PureState, np.ndarray], b: Union[PureState, np.ndarray]) -> PureState:
    """Kronecker product of two photons (4 x 4) or two single qubits (2 x 2)."""
    va, vb = _amplitudes(a), _amplitudes(b)
    if (va.shape[0], vb.shape[0]) not in ((2, 2), (4, 4)):
        raise StateError(f"unsupported dimension pair {va.shape[0]} x {vb.shape[0]}")
    return pure_state(np.kron(va, vb), normalize=True)


def overlap(a: PureState, b: PureState) -> complex:
    """Inner product <a|b>."""
    if a.dimension != b.dimension:
        raise StateError(f"dimension mismatch: {a.dimension} vs {b.dimension}")
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def _check_targets(targets: Sequence[int], n_qubits: int) -> None:
    if len(set(targets)) != len(targets):
        raise TargetError(f"duplicate target qubits {list(targets)}")
    for t in targets:
        if not 0 <= t < n_qubits:
            raise TargetError(f"target qubit {t} outside a {n_qubits}-qubit register")


def embed_operator(op: np.ndarray, targets: Sequence[int], n_qubits: int) -> np.ndarray:
    """Lift a k-qubit operator onto `targets` of an n-qubit register.

    The first target is the most significant qubit of `op`.
    """
    op = np.asarray(op, dtype=complex)
    targets = list(targets)
    _check_targets(targets, n_qubits)
    if op.shape != (2 ** len(targets), 2 ** len(targets)):
        raise TargetError(f"operator of shape {op.shape} cannot act on {len(targets)} qubit(s)")
    if targets == list(range(n_qubits)):
        return op
    rest = [q for q in range(n_qubits) if q not in targets]
    order = targets + rest
    full = np.kron(op, np.eye(2 ** len(rest))).reshape([2] * (2 * n_qubits))
    inverse = list(np.argsort(order))
    perm = inverse + [n_qubits + i for i in inverse]
    dim = 2 ** n_qubits
    return full.transpose(perm).reshape(dim, dim)


def _register_size(state: State) -> int:
    return state.n_qubits


def apply_operator(op: np.ndarray, state: State, targets: Sequence[int]) -> np.ndarray:
    """Unnormalized image of `state` under `op` (vector, or O rho O^dag)."""
    full = embed_operator(op, targets, _register_size(state))
    if isinstance(state, DensityOp):
        return full @ state.matrix @ full.conj().T
    return full @ state.amplitudes


def apply_unitary(U: np.ndarray, state: State, targets: Sequence[int]) -> State:
    """Apply a unitary to the addressed qubits; returns the same kind of state."""
    U = np.asarray(U, dtype=complex)
    if U.ndim != 2 or U.shape[0] != U.shape[1]:
        raise NonUnitaryError(f"gate must be a square matrix, got shape {U.shape}")
    if np.max(np.abs(U @ U.conj().T - np.eye(U.shape[0]))) > UNITARY_TOL:
        raise NonUnitaryError("matrix is not unitary")
    image = apply_operator(U, state, targets)
    if isinstance(state, DensityOp):
        return DensityOp((image + image.conj().T) / 2)
    return pure_state(image)


def as_density(state: State) -> DensityOp:
    if isinstance(state, DensityOp):
        return state
    return DensityOp.from_state(state)


def _check_measurement_operator(P: np.ndarray) -> None:
    if np.max(np.abs(P @ P - P)) <= PROJECTOR_TOL:
        return
    if np.linalg.eigvalsh(P.conj().T @ P).max() > 1 + PROJECTOR_TOL:
        raise StateError("operator is neither a projector nor a valid measurement operator")


def postselect(P: np.ndarray, state: State, label: str = '') -> Tuple[float, State]:
    """Condition `state` on the outcome of measurement operator P.

    Returns the success probability trace(P rho P^dag) and the renormalized
    state. Raises PostSelectionError when the probability is below 1e-15.
    """
    P = np.asarray(P, dtype=complex)
    if P.shape != (state.dimension, state.dimension):
        raise StateError(f"operator of shape {P.shape} does not match dimension {state.dimension}")
    _check_measurement_operator(P)
    n = _register_size(state)
    image = apply_operator(P, state, range(n))
    if isinstance(state, DensityOp):
        probability = float(np.trace(image).real)
    else:
        probability = float(np.vdot(image, image).real)
    if probability < ANNIHILATION_THRESHOLD:
        raise PostSelectionError(probability, label)
    logger.debug("post-selection %s kept probability %.6g", label or 'operator', probability)
    if isinstance(state, DensityOp):
        return probability, DensityOp.from_unnormalized(image)
    return probability, pure_state(image / np.sqrt(probability))


def partial_trace(state: State, keep: Sequence[int]) -> DensityOp:
    """Reduced density operator of the qubits in `keep` (in register order)."""
    n = _register_size(state)
    keep = sorted(keep)
    _check_targets(keep, n)
    traced = [q for q in range(n) if q not in keep]
    dk, dt = 2 ** len(keep), 2 ** len(traced)
    if isinstance(state, DensityOp):
        rho = state.matrix.reshape([2] * (2 * n))
        perm = keep + traced + [n + q for q in keep] + [n + q for q in traced]
        rho = rho.transpose(perm).reshape(dk, dt, dk, dt)
        reduced = np.einsum('ajbj->ab', rho)
    else:
        psi = state.amplitudes.reshape([2] * n).transpose(keep + traced).reshape(dk, dt)
        reduced = psi @ psi.conj().T
    return DensityOp.from_unnormalized(reduced)


def _sqrtm_psd(matrix: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh(matrix)
    w = np.where(w > EIGENVALUE_FLOOR, w, 0.0)
    return (v * np.sqrt(w)) @ v.conj().T


def concurrence(rho: State) -> float:
    """Wootters concurrence of a two-qubit state.

    The decreasing values lambda_i are the singular values of
    sqrt(rho) (Y x Y) sqrt(rho)^*, whose squares are the eigenvalues of
    rho (Y x Y) rho^* (Y x Y).
    """
    rho = as_density(rho)
    if rho.dimension != 4:
        raise StateError(f"concurrence needs a two-qubit state, got dimension {rho.dimension}")
    root = _sqrtm_psd(rho.matrix)
    lambdas = np.linalg.svd(root @ _SPIN_FLIP @ root.conj(), compute_uv=False)
    value = lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]
    return float(min(max(value, 0.0), 1.0))


def fidelity(rho: State, target: PureState) -> float:
    """<target|rho|target>, or |<target|psi>|^2 for a pure state."""
    if rho.dimension != target.dimension:
        raise StateError(f"dimension mismatch: {rho.dimension} vs {target.dimension}")
    if isinstance(rho, DensityOp):
        t = target.amplitudes
        return float(np.vdot(t, rho.matrix @ t).real)
    return float(abs(np.vdot(target.amplitudes, rho.amplitudes)) ** 2)


def down_conversion_pair() -> PureState:
    """Momentum-entangled photon pair (|0110> + |0011>)/sqrt(2) in |P_S M_S P_I M_I>."""
    amplitudes = np.zeros(16, dtype=complex)
    amplitudes[0b0110] = amplitudes[0b0011] = 1 / np.sqrt(2)
    return pure_state(amplitudes, normalize=True)
