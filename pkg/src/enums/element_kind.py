from enum import Enum


class ElementKind(Enum):
    """How an optical element acts on the state it is given."""
    UNITARY = "UNITARY"
    CHANNEL = "CHANNEL"
    POSTSELECT = "POSTSELECT"
    DETECTION = "DETECTION"
