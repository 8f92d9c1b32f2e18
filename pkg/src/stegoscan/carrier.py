"""Carrier file handling: BMP and raw byte buffers.

A carrier is split into an opaque header (preserved verbatim) and a payload
region that embedding and scanning operate on. For 24bpp uncompressed BMP
files the payload is everything from the declared pixel-data offset to the
end of the file, row padding included; the method treats the carrier as a
flat byte array, so padding bytes are valid slots. Anything else must be
loaded as RAW, where the whole input is payload.

Header fields beyond magic, pixel-data offset, dimensions, bit depth and
compression are deliberately not validated: byte-exact preservation matters
more than strictness here.
"""

from __future__ import annotations

import enum
import struct
from dataclasses import dataclass

import numpy as np

from .errors import MalformedHeader, UnsupportedFormat

_BMP_MAGIC = b"BM"
# smallest prefix that contains the fields we read (compression ends at 34)
_MIN_BMP_HEADER = 34


class CarrierFormat(enum.Enum):
    BMP24 = "bmp24"
    RAW = "raw"


@dataclass
class CarrierImage:
    """Parsed carrier: preserved header plus mutable payload bytes."""

    format: CarrierFormat
    header: bytes
    payload: np.ndarray  # uint8, writable
    width: int | None = None
    height: int | None = None

    @property
    def payload_length(self) -> int:
        return int(self.payload.size)


def load_carrier(data: bytes, format_hint: CarrierFormat | None = None) -> CarrierImage:
    """Parse carrier bytes into a CarrierImage.

    With no hint, only inputs carrying the BMP magic are accepted; anything
    else raises UnsupportedFormat so the caller opts into RAW deliberately.
    """
    data = bytes(data)
    if format_hint is CarrierFormat.RAW:
        return CarrierImage(
            format=CarrierFormat.RAW,
            header=b"",
            payload=np.frombuffer(data, dtype=np.uint8).copy(),
        )
    if format_hint is None and not data.startswith(_BMP_MAGIC):
        raise UnsupportedFormat(
            "input does not look like a BMP; load it as RAW explicitly"
        )
    return _load_bmp24(data)


def save_carrier(carrier: CarrierImage) -> bytes:
    """Serialize header followed by payload, byte-exact."""
    return carrier.header + carrier.payload.tobytes()


def _load_bmp24(data: bytes) -> CarrierImage:
    if not data.startswith(_BMP_MAGIC):
        raise MalformedHeader("missing BMP magic 'BM'")
    if len(data) < _MIN_BMP_HEADER:
        raise MalformedHeader(f"file too short for a BMP header ({len(data)} bytes)")
    (pixel_offset,) = struct.unpack_from("<I", data, 10)
    width, height = struct.unpack_from("<ii", data, 18)
    (bpp,) = struct.unpack_from("<H", data, 28)
    (compression,) = struct.unpack_from("<I", data, 30)
    if bpp != 24:
        raise UnsupportedFormat(f"only 24bpp BMP is supported, got {bpp}bpp")
    if compression != 0:
        raise UnsupportedFormat(f"compressed BMP (type {compression}) is not supported")
    if pixel_offset < _MIN_BMP_HEADER or pixel_offset > len(data):
        raise MalformedHeader(
            f"pixel-data offset {pixel_offset} inconsistent with file length {len(data)}"
        )
    return CarrierImage(
        format=CarrierFormat.BMP24,
        header=data[:pixel_offset],
        payload=np.frombuffer(data[pixel_offset:], dtype=np.uint8).copy(),
        width=width,
        height=height,
    )
