"""Constructors for the elements of the gate and analysis benches.

Every constructor returns an Element acting on one photon's qubits:
qubit 0 is the polarization (control), qubit 1 the momentum (target).
Compile-time re-targeting moves them onto the signal or idler photon.
"""

import math
from typing import Union

import numpy as np

from ..enums import ElementKind, Photon
from ..errors import ElementError, StateError
from ..models.element import Element
from ..models.imperfections import ImperfectionSet
from ..models.states import DensityOp, PureState
from ..quantum.algebra import as_density, embed_operator

POLARIZATION = 0
MOMENTUM = 1

IDENTITY_2 = np.eye(2)
PAULI_X = np.array([[0, 1], [1, 0]])

# Polarization is the control, momentum the target
CNOT_MATRIX = np.array([
    [1, 0, 0, 0],
    [0, 1, 0, 0],
    [0, 0, 0, 1],
    [0, 0, 1, 0],
])

# Momentum is the control, polarization the target
MCNOT_MATRIX = np.array([
    [1, 0, 0, 0],
    [0, 0, 0, 1],
    [0, 0, 1, 0],
    [0, 1, 0, 0],
])

SWAP_MATRIX = np.array([
    [1, 0, 0, 0],
    [0, 0, 1, 0],
    [0, 1, 0, 0],
    [0, 0, 0, 1],
])

CENTER_WAVELENGTH = 797e-9   # interference filter centre, meters
FILTER_BANDWIDTH = 1e-9      # interference filter width, meters


def pcnot() -> Element:
    """Polarization Sagnac loop with the 45-degree dove prism.

    H light circulates one way and sees T->R, B->L; V light circulates
    the other way and sees T->L, B->R. Any common phase of the round
    trip is unobservable and dropped.
    """
    return Element(ElementKind.UNITARY, (CNOT_MATRIX,), (POLARIZATION, MOMENTUM), 'P-CNOT')


def mcnot() -> Element:
    """Half-wave plate at 45 degrees in the path of the B beam."""
    return Element(ElementKind.UNITARY, (MCNOT_MATRIX,), (POLARIZATION, MOMENTUM), 'M-CNOT')


def hwp(theta: float) -> Element:
    """Half-wave plate with its fast axis at physical angle `theta` (radians).

    The polarization turns by twice the plate angle.
    """
    c, s = math.cos(2 * theta), math.sin(2 * theta)
    jones = np.array([[c, s], [s, -c]])
    return Element(ElementKind.UNITARY, (jones,), (POLARIZATION,), f'HWP({math.degrees(theta):g}deg)')


def attenuator(t_H: float, t_V: float, label: str = '') -> Element:
    """Polarization-dependent loss with amplitude transmissions t_H, t_V.

    Followed by single-photon post-selection this renormalizes the state
    and multiplies the success probability by ||diag(t_H, t_V)|psi>||^2.
    """
    for name, t in (('t_H', t_H), ('t_V', t_V)):
        if not 0.0 <= t <= 1.0:
            raise ElementError(f"attenuator {name} must be in [0, 1], got {t!r}")
    return Element(ElementKind.CHANNEL, (np.diag([t_H, t_V]),), (POLARIZATION,),
                   label or f'ATT({t_H:g},{t_V:g})')


def crosstalk_cnot(p_H: float, p_V: float) -> Element:
    """P-CNOT whose input PBS sends a fraction of each polarization the wrong way.

    A photon that circulates in the wrong direction receives the other
    polarization's image flip, so its target comes out inverted.
    """
    for name, p in (('p_H', p_H), ('p_V', p_V)):
        if not 0.0 <= p <= 1.0:
            raise ElementError(f"crosstalk {name} must be in [0, 1], got {p!r}")
    kept = np.kron(np.diag([math.sqrt(1 - p_H), math.sqrt(1 - p_V)]), IDENTITY_2)
    strayed = np.kron(np.diag([math.sqrt(p_H), math.sqrt(p_V)]), IDENTITY_2)
    flip_target = np.kron(IDENTITY_2, PAULI_X)
    kraus = (CNOT_MATRIX @ kept, flip_target @ CNOT_MATRIX @ strayed)
    return Element(ElementKind.CHANNEL, kraus, (POLARIZATION, MOMENTUM),
                   f'P-CNOT(crosstalk {p_H:g},{p_V:g})')


def beam_block(momentum_bit: int, photon: Union[Photon, str] = Photon.SIGNAL) -> Element:
    """Beam block over one momentum section; it passes the other one."""
    if momentum_bit not in (0, 1):
        raise ElementError(f"momentum bit must be 0 or 1, got {momentum_bit!r}")
    photon = Photon(photon)
    passed = 1 - momentum_bit
    projector = np.zeros((2, 2))
    projector[passed, passed] = 1.0
    block = Element(ElementKind.POSTSELECT, (projector,), (MOMENTUM,),
                    f"BB({'TB'[momentum_bit]},{photon.value})")
    return block.shifted(photon.offset)


def _analysis_polarization(theta_A: float) -> np.ndarray:
    return np.array([math.cos(theta_A), math.sin(theta_A)])


def analyzer_I(theta_A: float, m: int) -> Element:
    """Projector onto [cos th|0> + sin th|1>]_C x |m>_T (beam block, HWP2, PBS3)."""
    if m not in (0, 1):
        raise ElementError(f"analyzer momentum must be 0 or 1, got {m!r}")
    a = _analysis_polarization(theta_A)
    momentum = np.zeros(2)
    momentum[m] = 1.0
    vector = np.kron(a, momentum)
    return Element(ElementKind.POSTSELECT, (np.outer(vector, vector),), (POLARIZATION, MOMENTUM),
                   f'ANALYZER-I({math.degrees(theta_A):g}deg,{m})', terminal=True)


def coherence_length(lambda_0: float, delta_lambda: float) -> float:
    """L_c = lambda_0^2 / delta_lambda."""
    if lambda_0 <= 0 or delta_lambda <= 0:
        raise ElementError("wavelength and bandwidth must be positive")
    return lambda_0 ** 2 / delta_lambda


def coherence_envelope(path_mismatch: float, imp: ImperfectionSet) -> float:
    """gamma(D) = gamma_0 * exp(-(D / L_c)^2)."""
    return imp.interference_contrast * math.exp(-(path_mismatch / imp.coherence_length) ** 2)


def analyzer_II(theta_A: float, phi: float, imp: ImperfectionSet, path_mismatch: float = 0.0) -> Element:
    """Detection effect of state analysis II.

    The R and L outputs are overlapped on a beam splitter of reflectivity
    r and the polarization is analyzed at theta_A. The effect is
    T_pol |a><a| x [[1-r, k e^-i phi], [k e^i phi, r]] with
    k = sqrt(r(1-r)) * gamma(D); for r = 1/2 and gamma = 1 this is the
    projector onto [cos th|0> + sin th|1>] x (|0> + e^i phi |1>)/sqrt(2).
    """
    r = imp.bs_reflectivity
    kappa = math.sqrt(r * (1 - r)) * coherence_envelope(path_mismatch, imp)
    phase = complex(math.cos(phi), math.sin(phi))
    momentum = np.array([[1 - r, kappa * phase.conjugate()], [kappa * phase, r]])
    a = _analysis_polarization(theta_A)
    effect = imp.analyzer_transmission * np.kron(np.outer(a, a), momentum)
    return Element(ElementKind.DETECTION, (effect,), (POLARIZATION, MOMENTUM),
                   f'ANALYZER-II({math.degrees(theta_A):g}deg,{math.degrees(phi):g}deg)', terminal=True)


def detection_probability(element: Element, state: Union[PureState, DensityOp]) -> float:
    """Probability that a terminal element fires on `state`; zero is a valid answer."""
    ops = [embed_operator(op, element.targets, state.n_qubits) for op in element.operators]
    if element.kind is ElementKind.DETECTION:
        effect = ops[0]
    else:
        effect = sum(op.conj().T @ op for op in ops)
    if isinstance(state, DensityOp):
        value = np.trace(effect @ state.matrix).real
    else:
        value = np.vdot(state.amplitudes, effect @ state.amplitudes).real
    return float(min(max(value, 0.0), 1.0))


def analyzer_II_prob(rho: Union[PureState, DensityOp], theta_A: float, phi: float,
                     imp: ImperfectionSet, path_mismatch: float = 0.0) -> float:
    """Detection probability of state analysis II for a (P, M) state.

    p = T_pol [(1-r) p0 + r p1 + 2 sqrt(r(1-r)) gamma(D) Re(e^i phi c)],
    with p0, p1, c the populations and coherence of the momentum qubit
    after projecting the polarization onto theta_A.
    """
    try:
        rho = as_density(rho)
    except StateError as exc:
        raise StateError(f"analyzer II needs a valid state: {exc}") from exc
    if rho.dimension != 4:
        raise StateError(f"analyzer II acts on a single photon (dimension 4), got {rho.dimension}")
    return detection_probability(analyzer_II(theta_A, phi, imp, path_mismatch), rho)
