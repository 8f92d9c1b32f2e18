"""Single-bit read/write primitives over byte values.

Bit position 0 is the least significant bit. All functions are pure and
return new values; callers that need in-place behavior assign the result
back. Positions outside [0, 7] are rejected.
"""


def _check_pos(pos: int) -> None:
    if not 0 <= pos <= 7:
        raise ValueError(f"bit position must be in [0, 7], got {pos}")


def get_bit(byte: int, pos: int) -> int:
    """Return bit `pos` of `byte` as 0 or 1."""
    _check_pos(pos)
    return (byte >> pos) & 1


def set_bit(byte: int, pos: int) -> int:
    """Return `byte` with bit `pos` forced to 1."""
    _check_pos(pos)
    return byte | (1 << pos)


def clear_bit(byte: int, pos: int) -> int:
    """Return `byte` with bit `pos` forced to 0."""
    _check_pos(pos)
    return byte & ~(1 << pos)


def write_bit(byte: int, pos: int, value: int) -> int:
    """Return `byte` with bit `pos` set to `value` (0 or 1)."""
    if value not in (0, 1):
        raise ValueError(f"bit value must be 0 or 1, got {value}")
    return set_bit(byte, pos) if value else clear_bit(byte, pos)
