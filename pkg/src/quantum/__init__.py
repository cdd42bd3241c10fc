from .algebra import (
    apply_operator,
    apply_unitary,
    as_density,
    concurrence,
    down_conversion_pair,
    embed_operator,
    fidelity,
    ket_from_label,
    overlap,
    partial_trace,
    postselect,
    tensor,
)

__all__ = [
    'apply_operator', 'apply_unitary', 'as_density', 'concurrence', 'down_conversion_pair', 'embed_operator',
    'fidelity', 'ket_from_label', 'overlap', 'partial_trace', 'postselect', 'tensor',
]
