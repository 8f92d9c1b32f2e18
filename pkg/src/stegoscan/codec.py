"""Parameterized LSB embedding and known-parameter extraction.

Wire format commitment (files written by one implementation must decode in
another):

* The message is flattened to a bit stream LSB-first within each byte:
  stream bit i is bit (i mod 8) of message byte (i div 8).
* 1 bit per carrier byte: stream bit i lands in bit 0 of the carrier byte at
  ``start_position + i * stride``.
* 2 bits per carrier byte: stream bits (2g, 2g+1) land in bits (0, 1) of the
  carrier byte at ``start_position + g * stride``.

Stride counts carrier bytes between consecutive used bytes and applies per
carrier slot in both modes. All other bits of every carrier byte are
untouched.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CapacityExceeded


@dataclass(frozen=True)
class EmbedSpec:
    """Where and how densely message bits are placed in the payload."""

    start_position: int = 0
    stride: int = 1
    bits_per_byte: int = 1

    def __post_init__(self):
        if self.start_position < 0:
            raise ValueError(f"start_position must be >= 0, got {self.start_position}")
        if self.stride < 1:
            raise ValueError(f"stride must be >= 1, got {self.stride}")
        if self.bits_per_byte not in (1, 2):
            raise ValueError(f"bits_per_byte must be 1 or 2, got {self.bits_per_byte}")


def capacity(payload_length: int, spec: EmbedSpec) -> int:
    """Largest message length in bytes that fits the payload under `spec`."""
    if spec.start_position >= payload_length:
        return 0
    slots = (payload_length - 1 - spec.start_position) // spec.stride + 1
    return slots * spec.bits_per_byte // 8


def _as_payload_array(payload) -> np.ndarray:
    arr = np.frombuffer(bytes(payload), np.uint8) if not isinstance(payload, np.ndarray) else payload
    if arr.dtype != np.uint8 or arr.ndim != 1:
        raise ValueError("payload must be a flat uint8 byte sequence")
    return arr


def embed(payload, message: bytes, spec: EmbedSpec) -> np.ndarray:
    """Return a copy of `payload` with `message` written into its low bits.

    Raises CapacityExceeded when the message does not fit; the input is
    never modified.
    """
    arr = _as_payload_array(payload)
    message = bytes(message)
    if len(message) > capacity(arr.size, spec):
        raise CapacityExceeded(
            f"message of {len(message)} bytes exceeds capacity "
            f"{capacity(arr.size, spec)} of payload ({arr.size} bytes, {spec})"
        )
    out = arr.copy()
    if not message:
        return out
    stream = np.unpackbits(np.frombuffer(message, np.uint8), bitorder="little")
    if spec.bits_per_byte == 1:
        positions = spec.start_position + np.arange(stream.size, dtype=np.int64) * spec.stride
        out[positions] = (out[positions] & 0xFE) | stream
    else:
        values = stream[0::2] | (stream[1::2] << 1)
        positions = spec.start_position + np.arange(values.size, dtype=np.int64) * spec.stride
        out[positions] = (out[positions] & 0xFC) | values
    return out


def extract(payload, spec: EmbedSpec, length: int) -> bytes:
    """Read back `length` message bytes; exact inverse of embed's placement."""
    arr = _as_payload_array(payload)
    if length < 0:
        raise ValueError(f"length must be >= 0, got {length}")
    if length > capacity(arr.size, spec):
        raise CapacityExceeded(
            f"requested {length} bytes but capacity is {capacity(arr.size, spec)}"
        )
    if length == 0:
        return b""
    if spec.bits_per_byte == 1:
        positions = spec.start_position + np.arange(length * 8, dtype=np.int64) * spec.stride
        stream = arr[positions] & 1
    else:
        positions = spec.start_position + np.arange(length * 4, dtype=np.int64) * spec.stride
        slots = arr[positions]
        stream = np.empty(length * 8, np.uint8)
        stream[0::2] = slots & 1
        stream[1::2] = (slots >> 1) & 1
    return np.packbits(stream, bitorder="little").tobytes()
