from .element_kind import ElementKind
from .experiment_name import ExperimentName
from .photon import Photon

__all__ = ['ElementKind', 'ExperimentName', 'Photon']
