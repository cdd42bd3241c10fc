import math
from dataclasses import asdict, dataclass, fields, replace
from typing import Any, Dict

from ..errors import ConfigError


@dataclass(frozen=True)
class ImperfectionSet:
    """Non-ideal parameters of the gate and of the analysis interferometer.

    Transmissions are intensity transmissions. The ideal set is
    (1, 1, 1, 0.5, inf, 0) for the PBS, the two plate transmissions, the
    beam-splitter reflectivity, the coherence length and the residual
    asymmetry, with no routing crosstalk and full interference contrast.
    """

    pbs_transmission_H: float = 1.0      # two passes through PBS2, lumped
    plate_transmission_H: float = 1.0
    plate_transmission_V: float = 1.0
    bs_reflectivity: float = 0.5
    coherence_length: float = math.inf   # meters
    residual_asymmetry: float = 0.0      # epsilon; scales the plate H transmission by (1 - eps)
    crosstalk_H: float = 0.0             # H photons sent the wrong way round the loop
    crosstalk_V: float = 0.0
    interference_contrast: float = 1.0   # spatial-mode overlap of the analyzer-II arms
    analyzer_transmission: float = 1.0

    _UNIT_FIELDS = (
        'pbs_transmission_H', 'plate_transmission_H', 'plate_transmission_V',
        'bs_reflectivity', 'residual_asymmetry', 'crosstalk_H', 'crosstalk_V',
        'interference_contrast', 'analyzer_transmission',
    )

    def __post_init__(self):
        for name in self._UNIT_FIELDS:
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or not 0.0 <= value <= 1.0:
                raise ConfigError(f'imperfections.{name}', f'must be in [0, 1], got {value!r}')
        if not self.coherence_length > 0.0:
            raise ConfigError('imperfections.coherence_length',
                              f'must be positive, got {self.coherence_length!r}')

    def with_changes(self, **changes: Any) -> 'ImperfectionSet':
        return replace(self, **changes)

    def to_dict(self) -> Dict[str, Any]:
        """Convert to a JSON-friendly dictionary (an infinite length becomes null)."""
        data = asdict(self)
        if math.isinf(data['coherence_length']):
            data['coherence_length'] = None
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'ImperfectionSet':
        """Factory method to create an ImperfectionSet from config data."""
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f'imperfections.{sorted(unknown)[0]}', 'unknown field')
        values = dict(data)
        if values.get('coherence_length', 0.0) is None:
            values['coherence_length'] = math.inf
        for name, value in values.items():
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ConfigError(f'imperfections.{name}', f'must be a number, got {value!r}')
            values[name] = float(value)
        return cls(**values)
