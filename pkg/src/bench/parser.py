"""Parser for the line-oriented bench description language.

Grammar (one statement per line, '#' starts a comment)::

    source pair | source <label>
    hwp <angle> [photon]
    pcnot [photon]
    mcnot [photon]
    attenuator <t_H> <t_V> [photon]
    block <T|B|R|L> [photon]
    analyzer1 <angle> <0|1> [photon]
    analyzer2 <angle> <phase> [photon]

    photon := signal | idler
    angle  := <number>deg | <number>rad
"""

import logging
import math
import re
from pathlib import Path
from typing import Callable, Dict, List, Tuple, Union

from ..enums import Photon
from ..errors import BenchSyntaxError
from ..models.bench import Angle, Argument, BenchProgram, BenchStatement

logger = logging.getLogger(__name__)

_NUMBER = r'[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?'
_ANGLE_RE = re.compile(rf'^({_NUMBER})(deg|rad)$')
_NUMBER_RE = re.compile(rf'^{_NUMBER}$')

SECTIONS = ('T', 'B', 'R', 'L')


def _parse_angle(token: str, line: int) -> Angle:
    match = _ANGLE_RE.match(token)
    if match:
        return Angle(float(match.group(1)), match.group(2))
    if _NUMBER_RE.match(token):
        raise BenchSyntaxError("angle needs a unit suffix (deg or rad)", line, token)
    raise BenchSyntaxError("expected an angle such as 22.5deg", line, token)


def _parse_number(token: str, line: int) -> float:
    if not _NUMBER_RE.match(token):
        raise BenchSyntaxError("expected a number", line, token)
    return float(token)


def _parse_bit(token: str, line: int) -> int:
    if token not in ('0', '1'):
        raise BenchSyntaxError("expected 0 or 1", line, token)
    return int(token)


def _parse_section(token: str, line: int) -> str:
    if token not in SECTIONS:
        raise BenchSyntaxError("expected a beam section T, B, R or L", line, token)
    return token


def _parse_source(token: str, line: int) -> str:
    if token == 'pair' or len(token) == 2:
        return token
    raise BenchSyntaxError("source is 'pair' or a two-character basis label", line, token)


ArgParser = Callable[[str, int], Argument]

# keyword -> (argument parsers, accepts a photon tag)
GRAMMAR: Dict[str, Tuple[Tuple[ArgParser, ...], bool]] = {
    'source': ((_parse_source,), False),
    'hwp': ((_parse_angle,), True),
    'pcnot': ((), True),
    'mcnot': ((), True),
    'attenuator': ((_parse_number, _parse_number), True),
    'block': ((_parse_section,), True),
    'analyzer1': ((_parse_angle, _parse_bit), True),
    'analyzer2': ((_parse_angle, _parse_angle), True),
}

PHOTON_TAGS = {photon.value: photon for photon in Photon}


def _parse_line(tokens: List[str], line: int) -> BenchStatement:
    keyword, rest = tokens[0], tokens[1:]
    if keyword not in GRAMMAR:
        raise BenchSyntaxError(f"unknown keyword '{keyword}'", line, keyword)
    parsers, takes_photon = GRAMMAR[keyword]

    photon = None
    if rest and rest[-1] in PHOTON_TAGS:
        if not takes_photon:
            raise BenchSyntaxError(f"'{keyword}' takes no photon tag", line, rest[-1])
        photon = PHOTON_TAGS[rest[-1]]
        rest = rest[:-1]

    if len(rest) < len(parsers):
        raise BenchSyntaxError(
            f"'{keyword}' expects {len(parsers)} argument(s), got {len(rest)}", line, tokens[-1]
        )
    if len(rest) > len(parsers):
        raise BenchSyntaxError(
            f"'{keyword}' expects {len(parsers)} argument(s), got {len(rest)}", line, rest[len(parsers)]
        )

    args = tuple(parse(token, line) for parse, token in zip(parsers, rest))
    for arg, token in zip(args, rest):
        value = arg.value if isinstance(arg, Angle) else arg
        if isinstance(value, float) and not math.isfinite(value):
            raise BenchSyntaxError("value must be finite", line, token)
    return BenchStatement(keyword, args, photon, line)


def parse_bench(text: str) -> BenchProgram:
    """Parse bench text into a program; every error names its line and token."""
    statements = []
    for number, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split('#', 1)[0].split()
        if tokens:
            statements.append(_parse_line(tokens, number))
    logger.debug("parsed bench with %d statement(s)", len(statements))
    return BenchProgram(statements)


def load_bench(path: Union[str, Path]) -> BenchProgram:
    """Read and parse a UTF-8 bench file."""
    return parse_bench(Path(path).read_text(encoding='utf-8'))
