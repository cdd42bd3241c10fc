from enum import Enum


class Photon(Enum):
    """Photon of a down-converted pair; each owns a (P, M) qubit pair."""
    SIGNAL = "signal"
    IDLER = "idler"

    @property
    def offset(self) -> int:
        """Index of the photon's polarization qubit in |P_S M_S P_I M_I>."""
        return 0 if self is Photon.SIGNAL else 2
