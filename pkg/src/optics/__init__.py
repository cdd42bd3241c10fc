from .elements import (
    CENTER_WAVELENGTH,
    CNOT_MATRIX,
    FILTER_BANDWIDTH,
    MCNOT_MATRIX,
    SWAP_MATRIX,
    analyzer_I,
    analyzer_II,
    analyzer_II_prob,
    attenuator,
    beam_block,
    coherence_envelope,
    coherence_length,
    crosstalk_cnot,
    detection_probability,
    hwp,
    mcnot,
    pcnot,
)

__all__ = [
    'CENTER_WAVELENGTH', 'CNOT_MATRIX', 'FILTER_BANDWIDTH', 'MCNOT_MATRIX', 'SWAP_MATRIX',
    'analyzer_I', 'analyzer_II', 'analyzer_II_prob', 'attenuator', 'beam_block',
    'coherence_envelope', 'coherence_length', 'crosstalk_cnot', 'detection_probability',
    'hwp', 'mcnot', 'pcnot',
]
