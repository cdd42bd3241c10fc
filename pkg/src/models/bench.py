import math
from dataclasses import dataclass, field
from typing import List, Optional, Tuple, Union

from ..enums import Photon


@dataclass(frozen=True)
class Angle:
    """An angle exactly as written on the bench, with its unit."""

    value: float
    unit: str   # 'deg' or 'rad'

    @property
    def radians(self) -> float:
        return math.radians(self.value) if self.unit == 'deg' else self.value

    def __str__(self) -> str:
        return f"{self.value!r}{self.unit}"


Argument = Union[Angle, float, int, str]


@dataclass(frozen=True)
class BenchStatement:
    """One line of a bench description."""

    keyword: str
    args: Tuple[Argument, ...] = ()
    photon: Optional[Photon] = None
    line: int = field(default=0, compare=False)

    def to_text(self) -> str:
        parts = [self.keyword]
        for arg in self.args:
            parts.append(repr(arg) if isinstance(arg, float) else str(arg))
        if self.photon is not None:
            parts.append(self.photon.value)
        return ' '.join(parts)


@dataclass(frozen=True)
class BenchProgram:
    """Parsed bench description: an ordered list of statements."""

    statements: List[BenchStatement]

    def __len__(self) -> int:
        return len(self.statements)

    @property
    def source(self) -> Optional[BenchStatement]:
        for statement in self.statements:
            if statement.keyword == 'source':
                return statement
        return None

    @property
    def uses_photon_tags(self) -> bool:
        return any(s.photon is not None for s in self.statements)

    def to_text(self) -> str:
        """Canonical text form; parsing it gives back an equal program."""
        return ''.join(s.to_text() + '\n' for s in self.statements)
