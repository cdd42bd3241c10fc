"""Ordered element pipelines and their execution."""

import logging
from typing import List, Optional, Sequence, Union

import numpy as np

from ..enums import ElementKind
from ..errors import BenchCompileError, PostSelectionError, TargetError
from ..models import DensityOp, Element, PipelineRun, PureState
from ..optics import detection_probability
from ..quantum.algebra import (
    ANNIHILATION_THRESHOLD,
    apply_operator,
    apply_unitary,
    embed_operator,
    postselect,
)

logger = logging.getLogger(__name__)

State = Union[PureState, DensityOp]


class Pipeline:
    """Elements applied in order to a declared source state.

    Loss channels and post-selections renormalize the state; their
    probabilities multiply into the run's success probability. A
    terminal analyzer, when present, only reports its detection
    probability.
    """

    def __init__(self, elements: Sequence[Element], initial_state: State,
                 labels: Optional[List[str]] = None):
        self.elements: List[Element] = list(elements)
        self.initial_state = initial_state
        self.dimension = initial_state.dimension
        self.labels: List[str] = list(labels) if labels is not None else [e.label for e in self.elements]
        n_qubits = initial_state.n_qubits
        for position, element in enumerate(self.elements):
            if max(element.targets) >= n_qubits:
                raise BenchCompileError(
                    f"{element.label} targets qubit {max(element.targets)} of a {n_qubits}-qubit register"
                )
            if element.terminal and position != len(self.elements) - 1:
                raise BenchCompileError(f"{element.label} must be the last element")

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def n_qubits(self) -> int:
        return self.initial_state.n_qubits

    @property
    def terminal(self) -> Optional[Element]:
        if self.elements and self.elements[-1].terminal:
            return self.elements[-1]
        return None

    def run(self, state: Optional[State] = None) -> PipelineRun:
        """Propagate `state` (default: the declared source) through every element."""
        current = self.initial_state if state is None else state
        if current.dimension != self.dimension:
            raise TargetError(f"pipeline expects dimension {self.dimension}, got {current.dimension}")
        success = 1.0
        detection = None
        for element, label in zip(self.elements, self.labels):
            if element.terminal:
                detection = detection_probability(element, current)
                logger.debug("%s: detection probability %.6g", label, detection)
                break
            current, factor = self._apply(element, current, label)
            success *= factor
            logger.debug("%s: step probability %.6g", label, factor)
        return PipelineRun(current, success, detection, self.labels)

    def _apply(self, element: Element, state: State, label: str):
        if element.kind is ElementKind.UNITARY:
            return apply_unitary(element.matrix, state, element.targets), 1.0
        if element.kind is ElementKind.POSTSELECT or len(element.operators) == 1:
            full = embed_operator(element.matrix, element.targets, state.n_qubits)
            probability, selected = postselect(full, state, label)
            return selected, probability
        # Multi-Kraus channel: the result is mixed in general
        rho = state if isinstance(state, DensityOp) else DensityOp.from_state(state)
        image = sum(apply_operator(op, rho, element.targets) for op in element.operators)
        probability = float(np.trace(image).real)
        if probability < ANNIHILATION_THRESHOLD:
            raise PostSelectionError(probability, label)
        return DensityOp.from_unnormalized(image), probability

    def unitary(self) -> np.ndarray:
        """Composed matrix of a pipeline made only of unitary elements."""
        total = np.eye(self.dimension, dtype=complex)
        for element in self.elements:
            if element.kind is not ElementKind.UNITARY:
                raise BenchCompileError(f"{element.label} is not unitary; the pipeline has no single matrix")
            total = embed_operator(element.matrix, element.targets, self.n_qubits) @ total
        return total
