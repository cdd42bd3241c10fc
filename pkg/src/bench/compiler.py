"""Compile a parsed bench program into an element pipeline."""

import logging
import math
from typing import List

from ..enums import Photon
from ..errors import BenchCompileError, ElementError, StateError
from ..models import BenchProgram, BenchStatement, Element, ImperfectionSet
from ..optics import (
    analyzer_I,
    analyzer_II,
    attenuator,
    beam_block,
    crosstalk_cnot,
    hwp,
    mcnot,
    pcnot,
)
from ..quantum.algebra import down_conversion_pair, ket_from_label
from .pipeline import Pipeline

logger = logging.getLogger(__name__)

ANALYZERS = ('analyzer1', 'analyzer2')

# Input (T/B) and output (R/L) names of the same logical momentum value
SECTION_BITS = {'T': 0, 'R': 0, 'B': 1, 'L': 1}


def gate_elements(imp: ImperfectionSet) -> List[Element]:
    """The P-CNOT with its lossy PBS and compensation plate.

    Attenuators with unit transmission are omitted, so the ideal gate is a
    single CNOT element.
    """
    if imp.crosstalk_H or imp.crosstalk_V:
        elements = [crosstalk_cnot(imp.crosstalk_H, imp.crosstalk_V)]
    else:
        elements = [pcnot()]
    plate_H = imp.plate_transmission_H * (1.0 - imp.residual_asymmetry)
    if plate_H != 1.0 or imp.plate_transmission_V != 1.0:
        elements.append(attenuator(math.sqrt(plate_H), math.sqrt(imp.plate_transmission_V), 'PLATE'))
    if imp.pbs_transmission_H != 1.0:
        elements.append(attenuator(math.sqrt(imp.pbs_transmission_H), 1.0, 'PBS2'))
    return elements


def _statement_elements(statement: BenchStatement, imp: ImperfectionSet) -> List[Element]:
    keyword, args = statement.keyword, statement.args
    if keyword == 'hwp':
        return [hwp(args[0].radians)]
    if keyword == 'pcnot':
        return gate_elements(imp)
    if keyword == 'mcnot':
        return [mcnot()]
    if keyword == 'attenuator':
        return [attenuator(args[0], args[1])]
    if keyword == 'block':
        return [beam_block(SECTION_BITS[args[0]]).relabeled(f"BB({args[0]})")]
    if keyword == 'analyzer1':
        return [analyzer_I(args[0].radians, args[1])]
    if keyword == 'analyzer2':
        return [analyzer_II(args[0].radians, args[1].radians, imp)]
    raise BenchCompileError(f"'{keyword}' has no element constructor", statement.line)


def _source_state(program: BenchProgram):
    source = program.source
    if source is None:
        return down_conversion_pair() if program.uses_photon_tags else ket_from_label('00')
    label = source.args[0]
    if label == 'pair':
        return down_conversion_pair()
    try:
        return ket_from_label(label)
    except StateError as exc:
        raise BenchCompileError(str(exc), source.line) from exc


def _check_structure(program: BenchProgram, pair: bool) -> None:
    statements = program.statements
    for position, statement in enumerate(statements):
        if statement.keyword == 'source' and position != 0:
            raise BenchCompileError("source must be the first statement and appear once", statement.line)
        if statement.keyword in ANALYZERS and position != len(statements) - 1:
            raise BenchCompileError(f"{statement.keyword} must be the last statement", statement.line)
        if statement.photon is not None and not pair:
            raise BenchCompileError("photon tag on a single-photon bench", statement.line)


def compile_bench(program: BenchProgram, imp: ImperfectionSet = ImperfectionSet()) -> Pipeline:
    """Turn `program` into a pipeline acting on its declared source state."""
    initial = _source_state(program)
    pair = initial.n_qubits == 4
    _check_structure(program, pair)

    elements: List[Element] = []
    labels: List[str] = []
    for statement in program.statements:
        if statement.keyword == 'source':
            continue
        photon = statement.photon or Photon.SIGNAL
        offset = photon.offset if pair else 0
        try:
            produced = _statement_elements(statement, imp)
        except ElementError as exc:
            raise BenchCompileError(str(exc), statement.line) from exc
        for element in produced:
            elements.append(element.shifted(offset))
            suffix = f" {photon.value}" if pair else ''
            labels.append(f"line {statement.line}: {element.label}{suffix}")

    logger.debug("compiled %d statement(s) into %d element(s)", len(program), len(elements))
    return Pipeline(elements, initial, labels)
