"""Measurement campaigns: gate characterization, analysis scans, swap and GHZ runs.

Every campaign computes exact probabilities first; coincidence counts
are only drawn when a CountingConfig is supplied.
"""

import logging
import math
from dataclasses import replace
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..analysis.counting import sample_trace
from ..analysis.fitting import fit_malus, fit_sin_squared, visibility
from ..bench import compile_bench, load_bench, parse_bench
from ..errors import ConfigError, StateError
from ..models import (
    CountingConfig,
    CurveSummary,
    DensityOp,
    FringeExtrema,
    ImperfectionSet,
    PureState,
    ScanPoint,
    ScanTrace,
    TruthTable,
    VisibilityCurve,
    basis_label,
    pure_state,
)
from ..optics import CENTER_WAVELENGTH, analyzer_I, analyzer_II_prob, detection_probability
from ..quantum.algebra import as_density, partial_trace

logger = logging.getLogger(__name__)

State = Union[PureState, DensityOp]

BENCH_DIR = Path(__file__).resolve().parents[2] / 'benches'

SIGNAL_QUBITS = (0, 1)
IDEAL = ImperfectionSet()


def _bench(name: str):
    return load_bench(BENCH_DIR / f'{name}.bench')


def prepare_output(imp: ImperfectionSet = IDEAL) -> Tuple[DensityOp, float]:
    """Signal-photon state leaving the gate, and the probability it got there.

    The idler T section is blocked, the signal polarization rotated to
    (H + V)/sqrt(2) and the P-CNOT applied; the ideal output is the Bell
    state (|00> + |11>)/sqrt(2) with success probability 1/2.
    """
    run = compile_bench(_bench('preparation'), imp).run()
    return partial_trace(run.state, SIGNAL_QUBITS), run.success_probability


def _with_counts(points: List[ScanPoint], counting: Optional[CountingConfig], offset: int = 0) -> List[ScanPoint]:
    if counting is None:
        return points
    counts = sample_trace([p.coincidence_probability for p in points], counting, offset)
    return [replace(p, count=int(c)) for p, c in zip(points, counts)]


def truth_table(imp: ImperfectionSet = IDEAL, counting: Optional[CountingConfig] = None) -> TruthTable:
    """Inject each basis state of |PM> in turn and project the gate output on the basis."""
    probabilities = np.zeros((4, 4))
    rates = np.zeros((4, 4))
    for row in range(4):
        program = parse_bench(f"source {basis_label(row, 2)}\npcnot\n")
        run = compile_bench(program, imp).run()
        probabilities[row] = run.state.probabilities()
        rates[row] = probabilities[row] * run.success_probability
    counts = None
    if counting is not None:
        counts = sample_trace(rates.ravel(), counting).reshape(4, 4)
    table = TruthTable(probabilities, rates, counts)
    logger.info("truth table: erroneous outcomes per row %s", np.round(table.erroneous_sums(), 6).tolist())
    return table


def _prepared(imp: ImperfectionSet, state: Optional[State]) -> Tuple[DensityOp, float]:
    if state is None:
        return prepare_output(imp)
    if state.dimension != 4:
        raise StateError(f"analysis acts on the signal photon (dimension 4), got {state.dimension}")
    return as_density(state), 1.0


def polarization_scan(thetas: Sequence[float], m: int, imp: ImperfectionSet = IDEAL,
                      state: Optional[State] = None, counting: Optional[CountingConfig] = None,
                      offset: int = 0) -> ScanTrace:
    """Analyzer-I probability versus analysis angle for momentum output m."""
    rho, success = _prepared(imp, state)
    probs = [detection_probability(analyzer_I(theta, m), rho) for theta in thetas]
    points = [ScanPoint(float(theta), p, success) for theta, p in zip(thetas, probs)]
    points = _with_counts(points, counting, offset)
    return ScanTrace('theta_A', points, label=f'analyzer-I m={m}')


def interferometer_scan(theta_A: float, ts: Sequence[float], velocity: float,
                        imp: ImperfectionSet = IDEAL, state: Optional[State] = None,
                        counting: Optional[CountingConfig] = None, path_offset: float = 0.0,
                        wavelength: float = CENTER_WAVELENGTH, offset: int = 0) -> ScanTrace:
    """Analyzer-II probability while one arm is translated at `velocity`.

    The path mismatch is path_offset + velocity * t and the interferometer
    phase 2 pi (mismatch) / wavelength.
    """
    if not velocity > 0:
        raise ConfigError('scan.velocity', f'must be positive, got {velocity!r}')
    if not wavelength > 0:
        raise ConfigError('scan.wavelength', f'must be positive, got {wavelength!r}')
    rho, success = _prepared(imp, state)
    probs = []
    for t in ts:
        mismatch = path_offset + velocity * t
        phi = 2 * math.pi * mismatch / wavelength
        probs.append(analyzer_II_prob(rho, theta_A, phi, imp, mismatch))
    points = [ScanPoint(float(t), p, success) for t, p in zip(ts, probs)]
    points = _with_counts(points, counting, offset)
    return ScanTrace('t', points, label=f'analyzer-II theta={math.degrees(theta_A):g}deg')


def fringe_extrema(state: State, theta_A: float, imp: ImperfectionSet = IDEAL,
                   path_mismatch: float = 0.0) -> FringeExtrema:
    """Exact maximum and minimum of the analyzer-II probability over the phase.

    p(phi) = A + Re(e^i phi w), so three phases fix A and w.
    """
    p0, p_quarter, p_half = (analyzer_II_prob(state, theta_A, phi, imp, path_mismatch)
                             for phi in (0.0, math.pi / 2, math.pi))
    mean = (p0 + p_half) / 2
    amplitude = math.hypot((p0 - p_half) / 2, mean - p_quarter)
    return FringeExtrema(float(theta_A), mean + amplitude, mean - amplitude)


def extrema_curve(thetas: Sequence[float], imp: ImperfectionSet = IDEAL,
                  state: Optional[State] = None) -> VisibilityCurve:
    """Exact fringe maxima and minima at each analysis angle."""
    rho, _ = _prepared(imp, state)
    return VisibilityCurve([fringe_extrema(rho, theta, imp) for theta in thetas])


def visibility_curve(thetas: Sequence[float], ts: Sequence[float], velocity: float,
                     imp: ImperfectionSet = IDEAL, counting: Optional[CountingConfig] = None,
                     state: Optional[State] = None, path_offset: float = 0.0,
                     wavelength: float = CENTER_WAVELENGTH) -> VisibilityCurve:
    """Scan and fit at every analysis angle; maximum = alpha + beta, minimum = alpha.

    Point j of scan i is seeded with index i * len(ts) + j.
    """
    points = []
    for i, theta in enumerate(thetas):
        trace = interferometer_scan(theta, ts, velocity, imp, state=state, counting=counting,
                                    path_offset=path_offset, wavelength=wavelength, offset=i * len(ts))
        fit = fit_sin_squared(trace.controls, trace.observations())
        points.append(FringeExtrema(float(theta), fit.maximum, fit.minimum,
                                    fit.maximum_stderr, fit.minimum_stderr, fit))
    return VisibilityCurve(points)


def summarize_visibility_curve(curve: VisibilityCurve) -> CurveSummary:
    """Malus fits of both curves, their visibilities and the fringe centre."""
    maxima_fit = fit_malus(curve.thetas, curve.maxima)
    minima_fit = fit_malus(curve.thetas, curve.minima)
    center = (math.pi / 2 - maxima_fit.gamma) % math.pi
    minima_center = (-minima_fit.gamma) % math.pi
    summary = CurveSummary(maxima_fit, minima_fit, visibility(maxima_fit), visibility(minima_fit),
                           center, minima_center)
    logger.info("visibility curve: maxima V=%.4f, minima V=%.4f, centre %.3f deg",
                summary.maxima_visibility.value, summary.minima_visibility.value, math.degrees(center))
    return summary


def _pair_target(*labels: str) -> PureState:
    amplitudes = np.zeros(16, dtype=complex)
    for label in labels:
        amplitudes[int(label, 2)] = 1.0
    return pure_state(amplitudes, normalize=True)


def swap_target() -> PureState:
    """(|1001> + |0011>)/sqrt(2): the momentum entanglement moved into polarization."""
    return _pair_target('1001', '0011')


def ghz_target() -> PureState:
    """(|1110> + |0001>)/sqrt(2)."""
    return _pair_target('1110', '0001')


def swap_experiment(imp: ImperfectionSet = IDEAL) -> State:
    """P-CNOT, M-CNOT, P-CNOT on both photons of the down-converted pair."""
    return compile_bench(_bench('swap'), imp).run().state


def ghz_experiment(imp: ImperfectionSet = IDEAL) -> State:
    """One M-CNOT on each photon of the down-converted pair."""
    return compile_bench(_bench('ghz'), imp).run().state


def momentum_correlation(blocked: Optional[str] = None) -> Dict[str, float]:
    """Signal momentum distribution (T, B) with an idler section blocked, or none."""
    if blocked not in (None, 'T', 'B'):
        raise ConfigError('blocked', f"must be 'T', 'B' or null, got {blocked!r}")
    text = "source pair\n" + (f"block {blocked} idler\n" if blocked else '')
    state = compile_bench(parse_bench(text)).run().state
    momentum = partial_trace(state, [1]).probabilities()
    return {'T': float(momentum[0]), 'B': float(momentum[1])}
