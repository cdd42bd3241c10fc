from enum import Enum


class ExperimentName(Enum):
    """Measurement campaigns runnable from the command line."""
    TRUTH_TABLE = "truth-table"
    POL_SCAN = "pol-scan"
    IFO_SCAN = "ifo-scan"
    VISIBILITY_CURVE = "visibility-curve"
    SWAP = "swap"
    GHZ = "ghz"
    MOMENTUM_CHECK = "momentum-check"
