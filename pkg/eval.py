#!/usr/bin/env python3
"""
Evaluation script for the SPTQ simulator.

Runs the command line end to end and checks:
1. CNOT truth table in exact mode
2. Malus-law polarization scan
3. Exit codes for bad configurations
4. Byte-identical output for identical seeds
5. Swap and GHZ target fidelities
6. Momentum correlation through a beam block
7. Calibrated truth table errors
"""

import csv
import hashlib
import json
import math
import subprocess
import sys
import tempfile
from pathlib import Path
from typing import Any, List, Optional, Tuple

WORKDIR = tempfile.mkdtemp(prefix='sptq-eval-')


def run_sim(experiment: str, *args: str, out: Optional[str] = None) -> Tuple[int, Any]:
    """Run one experiment; returns (exit code, parsed stdout or None)."""
    cmd = ['python3', 'sptq_sim.py', experiment, '--out', out or str(Path(WORKDIR) / experiment), *args]
    try:
        result = subprocess.run(cmd, capture_output=True, text=True, timeout=300)
    except subprocess.TimeoutExpired:
        print(f"Timeout running experiment '{experiment}'")
        return -1, None

    try:
        return result.returncode, json.loads(result.stdout)
    except json.JSONDecodeError:
        return result.returncode, None


def read_rows(path: str) -> List[List[str]]:
    with open(path, newline='', encoding='utf-8') as f:
        return list(csv.reader(f))[1:]


def read_results(summary: Any) -> dict:
    with open(summary['files']['json'], encoding='utf-8') as f:
        return json.load(f)


def sha256(path: str) -> str:
    with open(path, 'rb') as f:
        return hashlib.sha256(f.read()).hexdigest()


def write_config(name: str, data: dict) -> str:
    path = Path(WORKDIR) / name
    path.write_text(json.dumps(data), encoding='utf-8')
    return str(path)


def test_truth_table():
    """Test 1: exact truth table is the CNOT permutation."""
    print("Test 1: CNOT truth table...")

    code, summary = run_sim('truth-table', '--exact')
    if code != 0 or summary is None:
        print(f"✗ truth-table exited with {code}")
        return False

    ones = {(r[0], r[1]) for r in read_rows(summary['files']['csv']) if float(r[2]) > 0.5}
    expected = {('00', '00'), ('01', '01'), ('10', '11'), ('11', '10')}
    if ones == expected:
        print("✓ Truth table flips the target only for control V")
        return True
    print(f"✗ Expected {sorted(expected)}, found {sorted(ones)}")
    return False


def test_polarization_scan():
    """Test 2: analysis I follows Malus's law."""
    print("\nTest 2: Polarization scan...")

    code, summary = run_sim('pol-scan', '--exact')
    if code != 0 or summary is None:
        print(f"✗ pol-scan exited with {code}")
        return False

    rows = read_rows(summary['files']['csv'])
    worst = max(abs(float(p) - math.cos(math.radians(float(t))) ** 2 / 2) for t, p, *_ in rows)
    if len(rows) == 19 and worst < 1e-9:
        print(f"✓ {len(rows)} angles match cos^2(theta)/2 (worst deviation {worst:.1e})")
        return True
    print(f"✗ {len(rows)} rows, worst deviation {worst:.3e}")
    return False


def test_exit_codes():
    """Test 3: configuration errors exit 2 and name the field."""
    print("\nTest 3: Exit codes...")

    bad = write_config('bad.json', {'counting': {'integration_time': -1.0}})
    code, error = run_sim('pol-scan', '--config', bad)
    if code != 2 or not error or error.get('field') != 'counting.integration_time':
        print(f"✗ Negative integration time gave exit {code}, output {error}")
        return False
    print("✓ Negative integration time rejected with field name")

    dead = write_config('dead.json', {
        'exact': True,
        'imperfections': {'pbs_transmission_H': 0.0, 'plate_transmission_V': 0.0},
    })
    code, _ = run_sim('pol-scan', '--config', dead)
    if code != 3:
        print(f"✗ Annihilated post-selection gave exit {code}, expected 3")
        return False
    print("✓ Annihilated post-selection reported as an experiment error")
    return True


def test_determinism():
    """Test 4: same seed, byte-identical CSV."""
    print("\nTest 4: Reproducibility...")

    config = write_config('seeded.json', {'rng_seed': 20050301})
    digests = []
    for attempt in ('a', 'b'):
        code, summary = run_sim('pol-scan', '--config', config, out=str(Path(WORKDIR) / f'seeded-{attempt}'))
        if code != 0 or summary is None:
            print(f"✗ Seeded run exited with {code}")
            return False
        digests.append(sha256(summary['files']['csv']))

    if digests[0] == digests[1]:
        print(f"✓ Two seeded runs produced identical CSVs ({digests[0][:12]})")
        return True
    print("✗ Seeded runs differ")
    return False


def test_swap_and_ghz():
    """Test 5: swap and GHZ benches reach their targets."""
    print("\nTest 5: Swap and GHZ...")

    passed = True
    for experiment in ('swap', 'ghz'):
        code, summary = run_sim(experiment, '--exact')
        if code != 0 or summary is None:
            print(f"✗ {experiment} exited with {code}")
            passed = False
            continue
        fidelity = read_results(summary)['results']['fidelity']
        if abs(fidelity - 1.0) < 1e-9:
            print(f"✓ {experiment} fidelity {fidelity:.6f}")
        else:
            print(f"✗ {experiment} fidelity {fidelity:.6f}, expected 1")
            passed = False
    return passed


def test_momentum_check():
    """Test 6: blocking an idler section heralds the signal section."""
    print("\nTest 6: Momentum correlation...")

    code, summary = run_sim('momentum-check', '--exact')
    if code != 0 or summary is None:
        print(f"✗ momentum-check exited with {code}")
        return False

    results = read_results(summary)['results']
    if results['T']['T'] > 0.999 and results['B']['B'] > 0.999 and abs(results['none']['T'] - 0.5) < 1e-9:
        print("✓ Signal section follows the blocked idler section")
        return True
    print(f"✗ Unexpected distributions: {results}")
    return False


def test_calibrated_truth_table():
    """Test 7: calibrated truth table errors average 1.4%."""
    print("\nTest 7: Calibrated truth table...")

    config = write_config('paper-exact.json', {'exact': True, 'imperfections': 'paper'})
    code, summary = run_sim('truth-table', '--config', config)
    if code != 0 or summary is None:
        print(f"✗ truth-table exited with {code}")
        return False

    errors = read_results(summary)['results']['erroneous_sums']
    mean = sum(errors) / len(errors)
    if all(0.005 <= e <= 0.02 for e in errors) and abs(mean - 0.014) < 1e-6:
        print(f"✓ Erroneous outcomes {[round(e, 4) for e in errors]}, mean {mean:.4f}")
        return True
    print(f"✗ Erroneous outcomes {errors}, mean {mean:.4f}")
    return False


def main():
    """Run all evaluation tests."""
    print("=" * 60)
    print("SPTQ SIMULATOR EVALUATION")
    print("=" * 60)

    tests = [
        test_truth_table,
        test_polarization_scan,
        test_exit_codes,
        test_determinism,
        test_swap_and_ghz,
        test_momentum_check,
        test_calibrated_truth_table,
    ]

    passed = 0
    total = len(tests)

    for test in tests:
        try:
            if test():
                passed += 1
        except Exception as e:
            print(f"✗ Test failed with exception: {e}")

    print("\n" + "=" * 60)
    print(f"FINAL SCORE: {passed}/{total}")
    print("=" * 60)
    return passed == total


if __name__ == "__main__":
    success = main()
    sys.exit(0 if success else 1)
