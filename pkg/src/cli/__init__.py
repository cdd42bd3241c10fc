from .config import RunConfig, ScanSettings, expand_grid, load_config, resolve_imperfections
from .runner import build_parser, execute, run

__all__ = [
    'RunConfig', 'ScanSettings', 'build_parser', 'execute', 'expand_grid', 'load_config',
    'resolve_imperfections', 'run',
]
