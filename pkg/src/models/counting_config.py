import math
from dataclasses import asdict, dataclass, fields
from typing import Any, Dict, Tuple

from ..errors import ConfigError


@dataclass(frozen=True)
class CountingConfig:
    """Rates and windows that turn probabilities into coincidence counts.

    The defaults are placeholders chosen to give count levels of the
    right magnitude; the pair rate and integration time are not quoted in
    the measurements being reproduced.
    """

    pair_rate: float = 4000.0                                  # pairs / s
    detection_efficiency: Tuple[float, float] = (1.0, 1.0)    # (signal, idler)
    integration_time: float = 1.0                              # s per point
    coincidence_window: float = 1e-9                           # s
    singles_rates: Tuple[float, float] = (1e5, 1e5)           # counts / s
    rng_seed: int = 0

    def __post_init__(self):
        for name in ('pair_rate', 'integration_time', 'coincidence_window'):
            if not math.isfinite(getattr(self, name)):
                raise ConfigError(f'counting.{name}', f'must be finite, got {getattr(self, name)!r}')
        for name in ('detection_efficiency', 'singles_rates'):
            if not all(math.isfinite(v) for v in getattr(self, name)):
                raise ConfigError(f'counting.{name}', f'must be finite, got {list(getattr(self, name))!r}')
        for name in ('pair_rate', 'integration_time'):
            if getattr(self, name) < 0:
                raise ConfigError(f'counting.{name}', f'must be non-negative, got {getattr(self, name)!r}')
        if not self.coincidence_window > 0:
            raise ConfigError('counting.coincidence_window',
                              f'must be positive, got {self.coincidence_window!r}')
        for name in ('detection_efficiency', 'singles_rates'):
            pair = getattr(self, name)
            if len(pair) != 2:
                raise ConfigError(f'counting.{name}', 'needs one value per detector (signal, idler)')
            if any(v < 0 for v in pair):
                raise ConfigError(f'counting.{name}', f'must be non-negative, got {list(pair)!r}')
        if any(v > 1 for v in self.detection_efficiency):
            raise ConfigError('counting.detection_efficiency', 'must be in [0, 1]')
        if not 0 <= self.rng_seed < 2 ** 64:
            raise ConfigError('counting.rng_seed', 'must be a 64-bit unsigned integer')

    @property
    def true_coincidence_rate(self) -> float:
        """Coincidence rate for a detection probability of one."""
        eta_s, eta_i = self.detection_efficiency
        return self.pair_rate * eta_s * eta_i

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data['detection_efficiency'] = list(self.detection_efficiency)
        data['singles_rates'] = list(self.singles_rates)
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'CountingConfig':
        """Factory method to create a CountingConfig from config data."""
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f'counting.{sorted(unknown)[0]}', 'unknown field')
        values: Dict[str, Any] = {}
        for name, value in data.items():
            if name in ('detection_efficiency', 'singles_rates'):
                if not isinstance(value, (list, tuple)) or not all(is_number(v) for v in value):
                    raise ConfigError(f'counting.{name}', f'must be a list of two numbers, got {value!r}')
                values[name] = tuple(float(v) for v in value)
            elif name == 'rng_seed':
                if isinstance(value, bool) or not isinstance(value, int):
                    raise ConfigError('counting.rng_seed', f'must be an integer, got {value!r}')
                values[name] = value
            else:
                if not is_number(value):
                    raise ConfigError(f'counting.{name}', f'must be a number, got {value!r}')
                values[name] = float(value)
        return cls(**values)


def is_number(value: Any) -> bool:
    """A finite int or float; json.loads lets NaN and Infinity through."""
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        return False
    return isinstance(value, int) or math.isfinite(value)
