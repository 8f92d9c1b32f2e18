"""Shared test fixtures and builders."""

from __future__ import annotations

import struct

import numpy as np
import pytest

BMP_HEADER_SIZE = 54


def make_bmp(width: int, height: int, pixel_data: bytes | None = None, seed: int = 0) -> bytes:
    """Minimal uncompressed 24bpp BMP (BITMAPINFOHEADER, bottom-up rows)."""
    row = width * 3
    padded_row = row + (-row) % 4
    image_size = padded_row * height
    if pixel_data is None:
        rng = np.random.default_rng(seed)
        pixel_data = rng.integers(0, 256, image_size, dtype=np.uint8).tobytes()
    if len(pixel_data) != image_size:
        raise ValueError(f"pixel data must be {image_size} bytes, got {len(pixel_data)}")
    file_header = struct.pack(
        "<2sIHHI", b"BM", BMP_HEADER_SIZE + image_size, 0, 0, BMP_HEADER_SIZE
    )
    info_header = struct.pack(
        "<IiiHHIIiiII", 40, width, height, 1, 24, 0, image_size, 2835, 2835, 0, 0
    )
    return file_header + info_header + pixel_data


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
