from typing import List, Optional, Union

from .states import DensityOp, PureState

State = Union[PureState, DensityOp]


class PipelineRun:
    """Represents a single execution of a compiled element pipeline."""

    def __init__(self, state: State, success_probability: float,
                 detection_probability: Optional[float], labels: List[str]):
        self.state = state
        # Product of every post-selection and loss factor met on the way
        self.success_probability = success_probability
        # Only set when the pipeline ends in an analyzer
        self.detection_probability = detection_probability
        self.labels = labels

    @property
    def coincidence_probability(self) -> Optional[float]:
        if self.detection_probability is None:
            return None
        return self.success_probability * self.detection_probability
