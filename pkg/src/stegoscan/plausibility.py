"""Decide whether candidate bytes look like ASCII text, and score them.

The accept set is a declared parameter of every scan: candidate counts on
random data depend directly on its cardinality, so it is explicit rather
than hard-coded. The default accepts printable ASCII plus tab, LF and CR
(98 byte values). NUL is always a reasonable rejection for text payloads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

PRINTABLE_RANGE = range(0x20, 0x7F)
WHITESPACE_EXTRAS = (0x09, 0x0A, 0x0D)

# score() counts letters, digits and space only
_SCORE_TABLE = bytes(
    1 if chr(c).isascii() and (chr(c).isalnum() or c == 0x20) else 0 for c in range(256)
)


@dataclass(frozen=True)
class AcceptSet:
    """Membership predicate over byte values, as a 256-entry table."""

    table: bytes  # 256 entries of 0/1

    def __post_init__(self):
        if len(self.table) != 256 or any(v not in (0, 1) for v in self.table):
            raise ValueError("accept table must be 256 entries of 0/1")

    @classmethod
    def from_values(cls, values: Iterable[int]) -> "AcceptSet":
        table = bytearray(256)
        for v in values:
            if not 0 <= v <= 255:
                raise ValueError(f"byte value out of range: {v}")
            table[v] = 1
        return cls(bytes(table))

    @classmethod
    def printable(cls) -> "AcceptSet":
        """Printable ASCII 0x20..0x7E (95 values)."""
        return cls.from_values(PRINTABLE_RANGE)

    @classmethod
    def default(cls) -> "AcceptSet":
        """Printable ASCII plus tab/LF/CR (98 values)."""
        return cls.from_values([*PRINTABLE_RANGE, *WHITESPACE_EXTRAS])

    @classmethod
    def from_hex_ranges(cls, spec: str) -> "AcceptSet":
        """Parse a range list like ``"20-7E,09,0A,0D"`` into an accept set."""
        values: list[int] = []
        for part in spec.split(","):
            part = part.strip()
            if not part:
                continue
            lo, sep, hi = part.partition("-")
            try:
                start = int(lo, 16)
                end = int(hi, 16) if sep else start
            except ValueError:
                raise ValueError(f"bad hex range {part!r}") from None
            if not (0 <= start <= end <= 255):
                raise ValueError(f"hex range out of order or out of byte range: {part!r}")
            values.extend(range(start, end + 1))
        if not values:
            raise ValueError("accept set is empty")
        return cls.from_values(values)

    @property
    def cardinality(self) -> int:
        return sum(self.table)

    def __contains__(self, byte: int) -> bool:
        return bool(self.table[byte])

    def as_bool_array(self) -> np.ndarray:
        """256-entry uint8 view for the scan kernels."""
        return np.frombuffer(self.table, dtype=np.uint8)


def ascii_verify(data: bytes, accept: AcceptSet) -> bool:
    """True iff every byte of `data` is in the accept set. Empty input is True."""
    if not data:
        return True
    table = accept.as_bool_array()
    return bool(table[np.frombuffer(bytes(data), dtype=np.uint8)].all())


def score(data: bytes) -> float:
    """Fraction of bytes that are ASCII letters, digits or space."""
    data = bytes(data)
    if not data:
        raise ValueError("score of empty input is undefined")
    return sum(data.translate(_SCORE_TABLE)) / len(data)
