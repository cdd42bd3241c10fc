"""State vectors and density operators over the SPTQ logical bases.

Qubits are ordered polarization-then-momentum for each photon, and the
signal photon comes before the idler: |P M> for a single photon and
|P_S M_S P_I M_I> for a pair. Qubit 0 is the most significant bit of a
basis index, so "0110" is index 6.
"""

from dataclasses import dataclass, field
from typing import ClassVar, Dict, List, Sequence

import numpy as np

from ..errors import StateError

NORM_TOL = 1e-12
HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
POSITIVITY_TOL = -1e-10


def _frozen(values) -> np.ndarray:
    arr = np.array(values, dtype=complex)
    arr.setflags(write=False)
    return arr


def _n_qubits(dimension: int) -> int:
    n = int(round(np.log2(dimension))) if dimension > 0 else -1
    if n < 1 or 2 ** n != dimension:
        raise StateError(f"dimension {dimension} is not a power of two")
    return n


@dataclass(frozen=True)
class BasisConvention:
    """Assignment of physical labels to the logical values 0 and 1.

    |H>, |T> and |R> are the logical |0>. The output momentum labels R/L
    name the same logical qubit as the input labels T/B; the relabeling is
    metadata only.
    """

    polarization_labels: Dict[int, str] = field(default_factory=lambda: {0: 'H', 1: 'V'})
    momentum_labels_input: Dict[int, str] = field(default_factory=lambda: {0: 'T', 1: 'B'})
    momentum_labels_output: Dict[int, str] = field(default_factory=lambda: {0: 'R', 1: 'L'})

    def __post_init__(self):
        for name in ('polarization_labels', 'momentum_labels_input', 'momentum_labels_output'):
            labels = getattr(self, name)
            if set(labels) != {0, 1} or len(set(labels.values())) != 2:
                raise StateError(f"{name} must map 0 and 1 to two distinct labels")
        momentum = set(self.momentum_labels_input.values()) | set(self.momentum_labels_output.values())
        if set(self.polarization_labels.values()) & momentum:
            raise StateError("polarization and momentum labels overlap")

    def bit_for(self, char: str, position: int) -> int:
        """Logical bit named by `char` at qubit `position` of a label."""
        if char in ('0', '1'):
            return int(char)
        if position % 2 == 0:
            tables = [self.polarization_labels]
        else:
            tables = [self.momentum_labels_input, self.momentum_labels_output]
        for table in tables:
            for bit, label in table.items():
                if label == char:
                    return bit
        raise StateError(f"unknown character '{char}' at position {position}")


DEFAULT_CONVENTION = BasisConvention()


def basis_label(index: int, n_qubits: int) -> str:
    """Logical label such as '0110' for a basis index."""
    return format(index, f'0{n_qubits}b')


@dataclass(frozen=True, eq=False)
class PureState:
    """Normalized state vector; probabilities are carried separately."""

    amplitudes: np.ndarray
    DIMENSION: ClassVar[int] = 0

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if self.DIMENSION and amps.shape[0] != self.DIMENSION:
            raise StateError(
                f"{type(self).__name__} needs {self.DIMENSION} amplitudes, got {amps.shape[0]}"
            )
        _n_qubits(amps.shape[0])
        norm = float(np.vdot(amps, amps).real)
        if abs(norm - 1.0) > NORM_TOL:
            raise StateError(f"state is not normalized (squared norm {norm!r})")
        object.__setattr__(self, 'amplitudes', _frozen(amps))

    @classmethod
    def normalized(cls, amplitudes: Sequence[complex]) -> 'PureState':
        """Build a state from unnormalized amplitudes."""
        amps = np.asarray(amplitudes, dtype=complex).reshape(-1)
        norm = np.linalg.norm(amps)
        if norm == 0.0:
            raise StateError("cannot normalize the zero vector")
        return cls(amps / norm)

    @property
    def dimension(self) -> int:
        return self.amplitudes.shape[0]

    @property
    def n_qubits(self) -> int:
        return _n_qubits(self.dimension)

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def to_dict(self) -> dict:
        """Convert the state to a dictionary for serialization."""
        n = self.n_qubits
        return {
            'kind': type(self).__name__,
            'amplitudes': {
                basis_label(i, n): [float(a.real), float(a.imag)]
                for i, a in enumerate(self.amplitudes)
            },
        }


class SPTQState(PureState):
    """Polarization (control) and momentum (target) qubits of one photon."""

    DIMENSION = 4


class TwoPhotonState(PureState):
    """Four qubits |P_S M_S P_I M_I> of a signal-idler pair."""

    DIMENSION = 16


def pure_state(amplitudes: Sequence[complex], normalize: bool = False) -> PureState:
    """Wrap amplitudes in the state class matching their dimension."""
    amps = np.asarray(amplitudes, dtype=complex).reshape(-1)
    cls = {4: SPTQState, 16: TwoPhotonState}.get(amps.shape[0], PureState)
    return cls.normalized(amps) if normalize else cls(amps)


@dataclass(frozen=True, eq=False)
class DensityOp:
    """Hermitian, unit-trace, positive operator for mixed states."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise StateError(f"density operator must be square, got shape {m.shape}")
        _n_qubits(m.shape[0])
        if np.max(np.abs(m - m.conj().T)) > HERMITIAN_TOL:
            raise StateError("density operator is not Hermitian")
        trace = np.trace(m).real
        if abs(trace - 1.0) > TRACE_TOL:
            raise StateError(f"density operator trace is {trace!r}, expected 1")
        hermitian = (m + m.conj().T) / 2
        if np.min(np.linalg.eigvalsh(hermitian)) < POSITIVITY_TOL:
            raise StateError("density operator has a negative eigenvalue")
        object.__setattr__(self, 'matrix', _frozen(hermitian))

    @classmethod
    def from_state(cls, state: PureState) -> 'DensityOp':
        amps = state.amplitudes
        return cls(np.outer(amps, amps.conj()))

    @classmethod
    def from_unnormalized(cls, matrix: np.ndarray) -> 'DensityOp':
        """Hermitize and renormalize an operator produced by a channel."""
        m = np.asarray(matrix, dtype=complex)
        m = (m + m.conj().T) / 2
        trace = np.trace(m).real
        if trace <= 0.0:
            raise StateError("operator has non-positive trace")
        return cls(m / trace)

    @classmethod
    def maximally_mixed(cls, dimension: int) -> 'DensityOp':
        return cls(np.eye(dimension, dtype=complex) / dimension)

    @classmethod
    def mixture(cls, states: List[PureState], weights: Sequence[float]) -> 'DensityOp':
        """Classical mixture sum_k w_k |psi_k><psi_k|."""
        weights = np.asarray(weights, dtype=float)
        if len(states) != len(weights) or len(states) == 0:
            raise StateError("mixture needs one weight per state")
        if np.any(weights < 0) or abs(weights.sum() - 1.0) > TRACE_TOL:
            raise StateError("mixture weights must be non-negative and sum to 1")
        dim = states[0].dimension
        m = np.zeros((dim, dim), dtype=complex)
        for state, w in zip(states, weights):
            if state.dimension != dim:
                raise StateError("mixture states have different dimensions")
            m += w * np.outer(state.amplitudes, state.amplitudes.conj())
        return cls(m)

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]

    @property
    def n_qubits(self) -> int:
        return _n_qubits(self.dimension)

    def probabilities(self) -> np.ndarray:
        return np.clip(np.diag(self.matrix).real, 0.0, None)

    def purity(self) -> float:
        return float(np.trace(self.matrix @ self.matrix).real)

    def to_dict(self) -> dict:
        """Convert the operator to a dictionary for serialization."""
        return {
            'kind': 'DensityOp',
            'dimension': self.dimension,
            'real': self.matrix.real.tolist(),
            'imag': self.matrix.imag.tolist(),
        }
