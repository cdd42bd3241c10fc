from dataclasses import dataclass, replace
from typing import Tuple

import numpy as np

from ..enums import ElementKind
from ..errors import ElementError

UNITARY_TOL = 1e-10
CONTRACTION_TOL = 1e-10


def _frozen(matrix) -> np.ndarray:
    arr = np.array(matrix, dtype=complex)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Element:
    """A typed optical element acting on a few qubits of the register.

    UNITARY elements carry one unitary; CHANNEL elements a Kraus set with
    sum K^dag K <= 1 (a trace-decreasing set models loss followed by
    single-photon post-selection); POSTSELECT elements one measurement
    operator; DETECTION elements one POVM effect. Terminal elements
    (analyzers) end a pipeline and report a detection probability.
    """

    kind: ElementKind
    operators: Tuple[np.ndarray, ...]
    targets: Tuple[int, ...]
    label: str
    terminal: bool = False

    def __post_init__(self):
        ops = tuple(_frozen(op) for op in self.operators)
        if not ops:
            raise ElementError(f"{self.label}: element needs at least one operator")
        size = 2 ** len(self.targets)
        for op in ops:
            if op.shape != (size, size):
                raise ElementError(
                    f"{self.label}: operator shape {op.shape} does not match {len(self.targets)} target(s)"
                )
        if self.kind in (ElementKind.UNITARY, ElementKind.POSTSELECT, ElementKind.DETECTION) and len(ops) != 1:
            raise ElementError(f"{self.label}: {self.kind.value} element takes exactly one operator")

        identity = np.eye(size)
        if self.kind is ElementKind.UNITARY:
            if np.max(np.abs(ops[0] @ ops[0].conj().T - identity)) > UNITARY_TOL:
                raise ElementError(f"{self.label}: payload is not unitary")
        elif self.kind is ElementKind.DETECTION:
            effect = ops[0]
            eigs = np.linalg.eigvalsh((effect + effect.conj().T) / 2)
            if eigs.min() < -CONTRACTION_TOL or eigs.max() > 1 + CONTRACTION_TOL:
                raise ElementError(f"{self.label}: effect must satisfy 0 <= E <= 1")
        else:
            total = sum(op.conj().T @ op for op in ops)
            if np.linalg.eigvalsh(total).max() > 1 + CONTRACTION_TOL:
                raise ElementError(f"{self.label}: operators must satisfy sum K^dag K <= 1")

        object.__setattr__(self, 'operators', ops)
        object.__setattr__(self, 'targets', tuple(int(t) for t in self.targets))

    @property
    def matrix(self) -> np.ndarray:
        """The single payload of a unitary, post-select or detection element."""
        return self.operators[0]

    def shifted(self, offset: int) -> 'Element':
        """Same element acting `offset` qubits further down the register."""
        return replace(self, targets=tuple(t + offset for t in self.targets))

    def relabeled(self, label: str) -> 'Element':
        return replace(self, label=label)
