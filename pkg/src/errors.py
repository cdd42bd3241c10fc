"""Exception hierarchy shared by the simulator packages."""

from typing import Optional


class SimulationError(Exception):
    """Base class for every error raised by the simulator."""


class StateError(SimulationError):
    """Invalid state label, dimension, or density operator."""


class NonUnitaryError(SimulationError):
    """A matrix passed as a gate is not unitary."""


class TargetError(SimulationError):
    """Qubit target indices are duplicated or out of range."""


class PostSelectionError(SimulationError):
    """Post-selection annihilated the state."""

    def __init__(self, probability: float, label: str = ''):
        self.probability = probability
        self.label = label
        where = f" at '{label}'" if label else ''
        super().__init__(
            f"post-selection annihilated the state{where} (probability {probability:.3e})"
        )


class ElementError(SimulationError):
    """Invalid optical element parameters."""


class BenchSyntaxError(SimulationError):
    """A bench description could not be parsed."""

    def __init__(self, message: str, line: int, token: str):
        self.line = line
        self.token = token
        super().__init__(f"line {line}: {message} (at '{token}')")


class BenchCompileError(SimulationError):
    """A parsed bench program cannot be turned into a pipeline."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ''
        super().__init__(prefix + message)


class FitError(SimulationError):
    """Curve fitting failed or was given unusable data."""


class UndefinedVisibilityError(FitError):
    """Visibility requested from a degenerate fit."""


class ConfigError(SimulationError):
    """Invalid run configuration; names the offending field."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


class CalibrationError(SimulationError):
    """A calibration target cannot be reached inside the search interval."""
