import io

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from PIL import Image

from stegoscan.carrier import CarrierFormat, CarrierImage, load_carrier, save_carrier
from stegoscan.errors import MalformedHeader, UnsupportedFormat

from conftest import make_bmp


def pil_bmp(width: int, height: int, color=(10, 20, 30)) -> bytes:
    buf = io.BytesIO()
    Image.new("RGB", (width, height), color).save(buf, format="BMP")
    return buf.getvalue()


def test_reference_tool_2x2_layout():
    # 2x2 24bpp: 12 pixel bytes + 4 row-padding bytes after a 54-byte header
    data = pil_bmp(2, 2)
    assert len(data) == 70
    image = load_carrier(data)
    assert image.format is CarrierFormat.BMP24
    assert len(image.header) == 54
    assert image.payload_length == 16
    assert image.width == 2 and image.height == 2


def test_own_builder_matches_reference_tool_geometry():
    for w, h in [(1, 1), (2, 2), (3, 5), (10, 4)]:
        ours = load_carrier(make_bmp(w, h))
        theirs = load_carrier(pil_bmp(w, h))
        assert ours.payload_length == theirs.payload_length
        assert (ours.width, ours.height) == (theirs.width, theirs.height)


def test_round_trip_identity_pil():
    for w, h in [(1, 1), (7, 3), (16, 16)]:
        data = pil_bmp(w, h)
        assert save_carrier(load_carrier(data)) == data


@settings(max_examples=40, deadline=None)
@given(w=st.integers(1, 40), h=st.integers(1, 40), seed=st.integers(0, 2**31))
def test_round_trip_identity_random_bmps(w, h, seed):
    data = make_bmp(w, h, seed=seed)
    image = load_carrier(data)
    assert save_carrier(image) == data
    row = w * 3 + (-(w * 3)) % 4
    assert image.payload_length == row * h


def test_raw_empty_input():
    image = load_carrier(b"", CarrierFormat.RAW)
    assert image.format is CarrierFormat.RAW
    assert image.header == b""
    assert image.payload_length == 0
    assert save_carrier(image) == b""


def test_raw_passthrough():
    image = load_carrier(b"abc", CarrierFormat.RAW)
    assert image.payload.tobytes() == b"abc"
    assert save_carrier(image) == b"abc"


def test_wrong_magic_with_bmp_hint():
    with pytest.raises(MalformedHeader):
        load_carrier(b"XX" + b"\x00" * 100, CarrierFormat.BMP24)


def test_no_hint_requires_bmp_magic():
    with pytest.raises(UnsupportedFormat):
        load_carrier(b"just some bytes, not a bitmap")


def test_truncated_header_rejected():
    with pytest.raises(MalformedHeader):
        load_carrier(b"BM" + b"\x00" * 10)


def test_non_24bpp_rejected():
    data = bytearray(make_bmp(2, 2))
    data[28] = 8  # bits-per-pixel field
    with pytest.raises(UnsupportedFormat):
        load_carrier(bytes(data))


def test_compressed_rejected():
    data = bytearray(make_bmp(2, 2))
    data[30] = 1  # compression field: BI_RLE8
    with pytest.raises(UnsupportedFormat):
        load_carrier(bytes(data))


def test_offset_beyond_file_rejected():
    data = bytearray(make_bmp(2, 2))
    data[10:14] = (10_000).to_bytes(4, "little")
    with pytest.raises(MalformedHeader):
        load_carrier(bytes(data))


def test_single_lsb_flip_changes_one_byte():
    data = make_bmp(4, 4, seed=3)
    image = load_carrier(data)
    image.payload[5] ^= 1
    out = save_carrier(image)
    assert len(out) == len(data)
    diffs = [i for i, (a, b) in enumerate(zip(data, out)) if a != b]
    assert diffs == [54 + 5]


def test_payload_mutation_preserves_header_and_length():
    data = make_bmp(6, 2, seed=9)
    image = load_carrier(data)
    original_header = image.header
    image.payload[:] = 0
    out = save_carrier(image)
    assert len(out) == len(data)
    assert out[:54] == data[:54]
    assert image.header == original_header


def test_payload_is_writable_copy():
    data = make_bmp(2, 2, seed=1)
    image_a = load_carrier(data)
    image_b = load_carrier(data)
    image_a.payload[0] ^= 0xFF
    assert image_b.payload[0] == data[54]


def test_carrier_image_dataclass_fields():
    image = CarrierImage(CarrierFormat.RAW, b"", np.zeros(3, np.uint8))
    assert image.width is None and image.height is None
    assert image.payload_length == 3
