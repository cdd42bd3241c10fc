"""Run configuration for the command line: JSON in, validated dataclasses out.

Angles are degrees here and radians everywhere past this module.
"""

import json
import math
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Dict, Optional, Tuple, Union

import numpy as np

from ..enums import ExperimentName
from ..errors import ConfigError, SimulationError
from ..experiments.calibration import paper_calibration
from ..models import CountingConfig, ImperfectionSet
from ..models.counting_config import is_number

IMPERFECTION_PRESETS = ('ideal', 'paper')

DEFAULT_THETAS_DEG = {
    ExperimentName.POL_SCAN: {'start': 0.0, 'stop': 180.0, 'step': 10.0},
    ExperimentName.VISIBILITY_CURVE: {'start': 0.0, 'stop': 90.0, 'step': 5.0},
}
# Scan timing is not quoted with the measurements; these are placeholders
DEFAULT_TIMES_S = {'start': 0.0, 'stop': 30.0, 'step': 0.25}
DEFAULT_IFO_THETA_DEG = 25.0
DEFAULT_VELOCITY = 100e-9          # m/s
DEFAULT_WAVELENGTH = 797e-9        # m
DEFAULT_OUTPUT_DIR = 'results'


def expand_grid(value: Any, name: str) -> Tuple[float, ...]:
    """A list of numbers, or {start, stop, step} expanded to an inclusive grid."""
    if isinstance(value, list):
        if not value or not all(is_number(v) for v in value):
            raise ConfigError(name, 'must be a non-empty list of numbers')
        return tuple(float(v) for v in value)
    if isinstance(value, dict):
        if set(value) != {'start', 'stop', 'step'}:
            raise ConfigError(name, 'grid object needs exactly start, stop and step')
        if not all(is_number(v) for v in value.values()):
            raise ConfigError(name, 'start, stop and step must be numbers')
        start, stop, step = float(value['start']), float(value['stop']), float(value['step'])
        if step <= 0 or stop < start:
            raise ConfigError(name, 'needs step > 0 and stop >= start')
        n = int(math.floor((stop - start) / step + 1e-9)) + 1
        return tuple(float(v) for v in np.linspace(start, start + (n - 1) * step, n))
    raise ConfigError(name, 'must be a list or a {start, stop, step} object')


@dataclass(frozen=True)
class ScanSettings:
    """Grids and interferometer motion for the scanning experiments."""

    thetas_deg: Tuple[float, ...] = ()
    m: int = 0
    theta_deg: float = DEFAULT_IFO_THETA_DEG
    times_s: Tuple[float, ...] = ()
    velocity: float = DEFAULT_VELOCITY
    path_offset: float = 0.0
    wavelength: float = DEFAULT_WAVELENGTH

    @property
    def thetas(self) -> np.ndarray:
        return np.radians(self.thetas_deg)

    @property
    def theta(self) -> float:
        return math.radians(self.theta_deg)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'thetas_deg': list(self.thetas_deg),
            'm': self.m,
            'theta_deg': self.theta_deg,
            'times_s': list(self.times_s),
            'velocity': self.velocity,
            'path_offset': self.path_offset,
            'wavelength': self.wavelength,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any], experiment: ExperimentName) -> 'ScanSettings':
        known = {'thetas_deg', 'm', 'theta_deg', 'times_s', 'velocity', 'path_offset', 'wavelength'}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f'scan.{sorted(unknown)[0]}', 'unknown field')
        thetas = data.get('thetas_deg', DEFAULT_THETAS_DEG.get(experiment, []))
        thetas_deg = expand_grid(thetas, 'scan.thetas_deg') if thetas else ()
        times_s = expand_grid(data.get('times_s', DEFAULT_TIMES_S), 'scan.times_s')
        m = data.get('m', 0)
        if m not in (0, 1) or isinstance(m, bool):
            raise ConfigError('scan.m', f'must be 0 or 1, got {m!r}')
        values: Dict[str, float] = {}
        for name in ('theta_deg', 'velocity', 'path_offset', 'wavelength'):
            if name in data:
                if not is_number(data[name]):
                    raise ConfigError(f'scan.{name}', f'must be a number, got {data[name]!r}')
                values[name] = float(data[name])
        for name in ('velocity', 'wavelength'):
            if name in values and not values[name] > 0:
                raise ConfigError(f'scan.{name}', f'must be positive, got {values[name]!r}')
        return cls(thetas_deg=thetas_deg, m=int(m), times_s=times_s, **values)


def resolve_imperfections(value: Union[str, Dict[str, Any], None]) -> Tuple[ImperfectionSet, Optional[str]]:
    """An ImperfectionSet from a preset name or an object of field overrides."""
    if value is None:
        return ImperfectionSet(), 'ideal'
    if isinstance(value, str):
        if value == 'ideal':
            return ImperfectionSet(), 'ideal'
        if value == 'paper':
            try:
                return paper_calibration(), 'paper'
            except SimulationError as exc:
                raise ConfigError('imperfections', f'paper calibration failed: {exc}') from exc
        raise ConfigError('imperfections', f"unknown preset {value!r}; use one of {list(IMPERFECTION_PRESETS)}")
    if isinstance(value, dict):
        return ImperfectionSet.from_dict(value), None
    raise ConfigError('imperfections', 'must be a preset name or an object')


@dataclass(frozen=True)
class RunConfig:
    """Everything one invocation needs; `to_dict` is the effective config echoed in results."""

    experiment: ExperimentName
    imperfections: ImperfectionSet = field(default_factory=ImperfectionSet)
    counting: Optional[CountingConfig] = field(default_factory=CountingConfig)
    scan: ScanSettings = field(default_factory=ScanSettings)
    output_dir: str = DEFAULT_OUTPUT_DIR
    preset: Optional[str] = 'ideal'

    @property
    def exact(self) -> bool:
        return self.counting is None

    @property
    def rng_seed(self) -> Optional[int]:
        return None if self.counting is None else self.counting.rng_seed

    def with_overrides(self, seed: Optional[int] = None, exact: bool = False,
                       output_dir: Optional[str] = None) -> 'RunConfig':
        """Apply command-line flags; --exact drops counting, --seed replaces the seed.

        A seed on an exact run is a ConfigError: exact runs draw no counts.
        """
        config = self
        if exact:
            config = replace(config, counting=None)
        if seed is not None:
            if config.counting is None:
                raise ConfigError('rng_seed', 'exact runs draw no counts; drop the seed or the exact setting')
            config = replace(config, counting=replace(config.counting, rng_seed=seed))
        if output_dir is not None:
            config = replace(config, output_dir=output_dir)
        return config

    def to_dict(self) -> Dict[str, Any]:
        return {
            'experiment': self.experiment.value,
            'exact': self.exact,
            'rng_seed': self.rng_seed,
            'imperfections_preset': self.preset,
            'imperfections': self.imperfections.to_dict(),
            'counting': None if self.counting is None else self.counting.to_dict(),
            'scan': self.scan.to_dict(),
            'output_dir': self.output_dir,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any], experiment: ExperimentName) -> 'RunConfig':
        """Factory method to create a RunConfig from parsed JSON."""
        if not isinstance(data, dict):
            raise ConfigError('config', 'top level must be a JSON object')
        known = {'experiment', 'exact', 'rng_seed', 'imperfections', 'counting', 'scan', 'output_dir'}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(sorted(unknown)[0], 'unknown field')
        if 'experiment' in data and data['experiment'] != experiment.value:
            raise ConfigError('experiment', f"config names {data['experiment']!r} but {experiment.value!r} was requested")

        exact = data.get('exact', False)
        if not isinstance(exact, bool):
            raise ConfigError('exact', f'must be true or false, got {exact!r}')
        if exact and data.get('counting') is not None:
            raise ConfigError('counting', 'exact mode and a counting configuration are mutually exclusive')

        counting = None
        if not exact:
            if not isinstance(data.get('counting', {}), (dict, type(None))):
                raise ConfigError('counting', 'must be an object')
            counting_data = dict(data.get('counting') or {})
            if 'rng_seed' in data:
                counting_data['rng_seed'] = data['rng_seed']
            counting = CountingConfig.from_dict(counting_data)
        elif 'rng_seed' in data and (isinstance(data['rng_seed'], bool) or not isinstance(data['rng_seed'], int)):
            raise ConfigError('rng_seed', f"must be an integer, got {data['rng_seed']!r}")

        scan_data = data.get('scan', {})
        if not isinstance(scan_data, dict):
            raise ConfigError('scan', 'must be an object')
        output_dir = data.get('output_dir', DEFAULT_OUTPUT_DIR)
        if not isinstance(output_dir, str) or not output_dir:
            raise ConfigError('output_dir', 'must be a non-empty string')

        imperfections, preset = resolve_imperfections(data.get('imperfections'))
        return cls(
            experiment=experiment,
            imperfections=imperfections,
            counting=counting,
            scan=ScanSettings.from_dict(scan_data, experiment),
            output_dir=output_dir,
            preset=preset,
        )


def load_config(path: Optional[Union[str, Path]], experiment: ExperimentName) -> RunConfig:
    """Read a JSON config file; no path gives the defaults."""
    if path is None:
        return RunConfig.from_dict({}, experiment)
    text = Path(path).read_text(encoding='utf-8')
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError('config', f'invalid JSON at line {exc.lineno}: {exc.msg}') from exc
    return RunConfig.from_dict(data, experiment)
