#!/usr/bin/env python3
"""
SPTQ simulator - single-photon two-qubit logic experiments from the command line

Runs one measurement campaign per invocation and writes <experiment>.json
(effective config, version, seed, results) and <experiment>.csv (flat
table for plotting) into the output directory.

    python sptq_sim.py truth-table --config configs/paper.json
    python sptq_sim.py pol-scan --exact --out results
"""

import sys
import os
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from src.cli import run


if __name__ == "__main__":
    sys.exit(run())
