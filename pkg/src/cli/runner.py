"""Command-line runner: one experiment per invocation, JSON and CSV out."""

import argparse
import csv
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .. import __version__
from ..analysis import RNG_ALGORITHM, accidental_fraction, fit_malus, fit_sin_squared, visibility
from ..enums import ExperimentName
from ..errors import ConfigError, FitError, SimulationError
from ..experiments import (
    ghz_experiment,
    ghz_target,
    interferometer_scan,
    momentum_correlation,
    polarization_scan,
    prepare_output,
    summarize_visibility_curve,
    swap_experiment,
    swap_target,
    truth_table,
    visibility_curve,
)
from ..models import PureState, ScanTrace, basis_label
from ..quantum import concurrence, fidelity, partial_trace
from .config import RunConfig, load_config

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_IO = 1
EXIT_CONFIG = 2
EXIT_EXPERIMENT = 3

Row = List[Any]
Table = Tuple[List[str], List[Row]]

POLARIZATION_QUBITS = [0, 2]


def _fit_summary(fit_fn, trace: ScanTrace) -> Dict[str, Any]:
    summary: Dict[str, Any] = {'fit': None, 'visibility': None}
    try:
        fit = fit_fn(trace.controls, trace.observations())
        summary['fit'] = fit.to_dict()
        summary['visibility'] = visibility(fit).to_dict()
    except FitError as exc:
        logger.warning("%s: %s", trace.label, exc)
    return summary


def _trace_table(trace: ScanTrace, control_column: str, controls: Sequence[float]) -> Table:
    rows = [[c, p.probability, p.success_probability, p.count] for c, p in zip(controls, trace.points)]
    return [control_column, 'probability', 'success_probability', 'counts'], rows


def _run_truth_table(config: RunConfig) -> Tuple[Dict[str, Any], Table]:
    table = truth_table(config.imperfections, config.counting)
    rows = []
    for i in range(4):
        for j in range(4):
            count = None if table.counts is None else int(table.counts[i, j])
            rows.append([basis_label(i, 2), basis_label(j, 2), table.probabilities[i, j], table.rates[i, j], count])
    return table.to_dict(), (['input', 'output', 'probability', 'rate', 'counts'], rows)


def _run_pol_scan(config: RunConfig) -> Tuple[Dict[str, Any], Table]:
    scan = config.scan
    rho, _ = prepare_output(config.imperfections)
    trace = polarization_scan(scan.thetas, scan.m, config.imperfections, counting=config.counting)
    results = {'trace': trace.to_dict(), 'concurrence': concurrence(rho)}
    results.update(_fit_summary(fit_malus, trace))
    return results, _trace_table(trace, 'theta_deg', scan.thetas_deg)


def _run_ifo_scan(config: RunConfig) -> Tuple[Dict[str, Any], Table]:
    scan = config.scan
    trace = interferometer_scan(scan.theta, scan.times_s, scan.velocity, config.imperfections,
                                counting=config.counting, path_offset=scan.path_offset,
                                wavelength=scan.wavelength)
    results = {'trace': trace.to_dict()}
    results.update(_fit_summary(fit_sin_squared, trace))
    return results, _trace_table(trace, 't_s', scan.times_s)


def _run_visibility_curve(config: RunConfig) -> Tuple[Dict[str, Any], Table]:
    scan = config.scan
    curve = visibility_curve(scan.thetas, scan.times_s, scan.velocity, config.imperfections,
                             counting=config.counting, path_offset=scan.path_offset,
                             wavelength=scan.wavelength)
    results: Dict[str, Any] = {'curve': curve.to_dict()}
    try:
        results['summary'] = summarize_visibility_curve(curve).to_dict()
    except FitError as exc:
        results['summary'] = None
        logger.warning("visibility curve could not be summarized: %s", exc)
    rows = [[theta, p.maximum, p.minimum, p.maximum_stderr, p.minimum_stderr, p.converged]
            for theta, p in zip(scan.thetas_deg, curve.points)]
    columns = ['theta_deg', 'maximum', 'minimum', 'maximum_stderr', 'minimum_stderr', 'converged']
    return results, (columns, rows)


def _state_table(state) -> Table:
    probabilities = state.probabilities()
    rows = []
    for index in range(state.dimension):
        if isinstance(state, PureState):
            amplitude = state.amplitudes[index]
            rows.append([basis_label(index, 4), amplitude.real, amplitude.imag, probabilities[index]])
        else:
            rows.append([basis_label(index, 4), None, None, probabilities[index]])
    return ['basis', 'real', 'imag', 'probability'], rows


def _state_results(state, target: PureState) -> Dict[str, Any]:
    polarization = partial_trace(state, POLARIZATION_QUBITS)
    return {
        'state': state.to_dict(),
        'fidelity': fidelity(state, target),
        'polarization_concurrence': concurrence(polarization),
        'polarization_state': polarization.to_dict(),
    }


def _run_swap(config: RunConfig) -> Tuple[Dict[str, Any], Table]:
    state = swap_experiment(config.imperfections)
    return _state_results(state, swap_target()), _state_table(state)


def _run_ghz(config: RunConfig) -> Tuple[Dict[str, Any], Table]:
    state = ghz_experiment(config.imperfections)
    return _state_results(state, ghz_target()), _state_table(state)


def _run_momentum_check(config: RunConfig) -> Tuple[Dict[str, Any], Table]:
    results: Dict[str, Any] = {}
    rows = []
    for blocked in (None, 'T', 'B'):
        key = blocked or 'none'
        distribution = momentum_correlation(blocked)
        results[key] = distribution
        rows.extend([key, section, probability] for section, probability in distribution.items())
    return results, (['blocked', 'signal_momentum', 'probability'], rows)


RUNNERS = {
    ExperimentName.TRUTH_TABLE: _run_truth_table,
    ExperimentName.POL_SCAN: _run_pol_scan,
    ExperimentName.IFO_SCAN: _run_ifo_scan,
    ExperimentName.VISIBILITY_CURVE: _run_visibility_curve,
    ExperimentName.SWAP: _run_swap,
    ExperimentName.GHZ: _run_ghz,
    ExperimentName.MOMENTUM_CHECK: _run_momentum_check,
}


def _cell(value: Any) -> str:
    if value is None:
        return ''
    if isinstance(value, (bool, np.bool_)):
        return 'true' if value else 'false'
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return str(value)


def write_csv(path: Path, table: Table) -> None:
    columns, rows = table
    with open(path, 'w', newline='', encoding='utf-8') as f:
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_cell(v) for v in row])


def write_json(path: Path, payload: Dict[str, Any]) -> None:
    with open(path, 'w', encoding='utf-8') as f:
        json.dump(payload, f, indent=2, sort_keys=True, default=_json_default)
        f.write('\n')


def _json_default(value: Any) -> Any:
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.generic):
        return value.item()
    raise TypeError(f"cannot serialize {type(value).__name__}")


def execute(config: RunConfig) -> Dict[str, str]:
    """Run the configured experiment and write its result files; returns their paths."""
    experiment = config.experiment
    logger.info("running %s (%s mode)", experiment.value, 'exact' if config.exact else 'counting')
    if config.counting is not None:
        accidental_fraction(config.counting)
    results, table = RUNNERS[experiment](config)

    out_dir = Path(config.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    json_path = out_dir / f'{experiment.value}.json'
    csv_path = out_dir / f'{experiment.value}.csv'
    write_json(json_path, {
        'version': __version__,
        'experiment': experiment.value,
        'seed': config.rng_seed,
        'rng': None if config.exact else RNG_ALGORITHM,
        'exact': config.exact,
        'config': config.to_dict(),
        'results': results,
    })
    write_csv(csv_path, table)
    logger.info("wrote %s and %s", json_path, csv_path)
    return {'json': str(json_path), 'csv': str(csv_path)}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description='Simulate single-photon two-qubit logic experiments')
    parser.add_argument('experiment', choices=[e.value for e in ExperimentName],
                        help='Measurement campaign to run')
    parser.add_argument('--config', help='Path to a JSON run configuration')
    parser.add_argument('--seed', type=int, help='Override the counting seed')
    parser.add_argument('--exact', action='store_true', help='Exact probabilities, no sampled counts')
    parser.add_argument('--out', help='Output directory (overrides the config)')
    parser.add_argument('--verbose', action='store_true', help='Debug logging on stderr')
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Entry point; returns the process exit status."""
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format='%(asctime)s %(levelname)s %(name)s: %(message)s',
        stream=sys.stderr,
    )
    experiment = ExperimentName(args.experiment)
    try:
        config = load_config(args.config, experiment).with_overrides(args.seed, args.exact, args.out)
        files = execute(config)
    except ConfigError as e:
        print(json.dumps({"error": str(e), "field": e.field}))
        return EXIT_CONFIG
    except SimulationError as e:
        print(json.dumps({"error": f"Experiment failed: {e}"}))
        return EXIT_EXPERIMENT
    except OSError as e:
        print(json.dumps({"error": f"I/O failure: {e}"}))
        return EXIT_IO

    print(json.dumps({'experiment': experiment.value, 'files': files}, indent=2))
    return EXIT_OK
