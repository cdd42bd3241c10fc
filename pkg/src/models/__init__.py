from .bench import Angle, BenchProgram, BenchStatement
from .counting_config import CountingConfig
from .element import Element
from .fit_result import FitResult, Visibility
from .imperfections import ImperfectionSet
from .pipeline_run import PipelineRun
from .scan import CurveSummary, FringeExtrema, ScanPoint, ScanTrace, TruthTable, VisibilityCurve
from .states import (
    DEFAULT_CONVENTION,
    BasisConvention,
    DensityOp,
    PureState,
    SPTQState,
    TwoPhotonState,
    basis_label,
    pure_state,
)

__all__ = [
    'Angle', 'BasisConvention', 'CurveSummary', 'BenchProgram', 'BenchStatement', 'CountingConfig',
    'DEFAULT_CONVENTION', 'DensityOp', 'Element', 'FitResult', 'FringeExtrema',
    'ImperfectionSet', 'PipelineRun', 'PureState', 'SPTQState', 'ScanPoint', 'ScanTrace',
    'TruthTable', 'TwoPhotonState', 'Visibility', 'VisibilityCurve', 'basis_label', 'pure_state',
]
