"""Single-photon two-qubit (SPTQ) quantum logic simulator."""

__version__ = "0.3.0"
