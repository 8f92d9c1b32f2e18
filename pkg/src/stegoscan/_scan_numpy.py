"""Pure-numpy scan kernels (fallback backend).

Same contract as the numba backend: `run_lengths` returns, for every start
position in [start0, start1), how many consecutive decodable message bytes
pass the accept table (capped at max_len, 0 where the first byte fails or
does not fit); `extract_many` decodes message bytes for a batch of
(start, length) pairs into one flat buffer.

The run computation is vectorized with the classic suffix-run trick applied
per residue class modulo the slot distance between consecutive message
bytes. Acceptance beyond the end of the payload is forced false, so runs
stop exactly where a message byte would no longer fit.
"""

from __future__ import annotations

import numpy as np


def _decoded_bytes(payload: np.ndarray, lo: int, count: int, stride: int, bits: int) -> np.ndarray:
    """Decode the message byte starting at each position lo..lo+count-1."""
    out = np.zeros(count, np.uint8)
    spb = 8 // bits
    for t in range(spb):
        seg = payload[lo + t * stride : lo + t * stride + count]
        if bits == 1:
            out |= (seg & 1) << t
        else:
            out |= (seg & 3) << (2 * t)
    return out


# starts per internal block: keeps temporary arrays a constant, cache-friendly
# size no matter how large a range the caller asks for in one call
_BLOCK = 1 << 16


def run_lengths(
    payload: np.ndarray,
    table: np.ndarray,
    start0: int,
    start1: int,
    stride: int,
    bits: int,
    max_len: int,
) -> np.ndarray:
    count = start1 - start0
    if count <= 0:
        return np.zeros(0, np.int32)
    if count <= _BLOCK:
        return _run_lengths_block(payload, table, start0, start1, stride, bits, max_len)
    out = np.empty(count, np.int32)
    for lo in range(start0, start1, _BLOCK):
        hi = min(start1, lo + _BLOCK)
        out[lo - start0 : hi - start0] = _run_lengths_block(
            payload, table, lo, hi, stride, bits, max_len
        )
    return out


def _run_lengths_block(
    payload: np.ndarray,
    table: np.ndarray,
    start0: int,
    start1: int,
    stride: int,
    bits: int,
    max_len: int,
) -> np.ndarray:
    n = payload.shape[0]
    count = start1 - start0
    spb = 8 // bits
    h = spb * stride
    # window long enough that a capped run starting anywhere in the block is exact
    hi = min(n, start1 + (max_len - 1) * h)
    width = hi - start0
    accepted = np.zeros(width, bool)
    valid = max(0, min(hi, n - (spb - 1) * stride) - start0)
    if valid > 0:
        decoded = _decoded_bytes(payload, start0, valid, stride, bits)
        accepted[:valid] = table[decoded] != 0
    runs = np.zeros(width, np.int32)
    for r in range(min(h, width)):
        sub = accepted[r::h]
        rev = sub[::-1]
        idx = np.arange(rev.size, dtype=np.int32)
        last_reject = np.maximum.accumulate(np.where(~rev, idx, np.int32(-1)))
        runs[r::h] = (idx - last_reject)[::-1]
    return np.minimum(runs[:count], max_len)


def extract_many(
    payload: np.ndarray,
    starts: np.ndarray,
    lengths: np.ndarray,
    stride: int,
    bits: int,
) -> np.ndarray:
    total = int(lengths.sum())
    out = np.zeros(total, np.uint8)
    if total == 0:
        return out
    spb = 8 // bits
    h = spb * stride
    ends = np.cumsum(lengths)
    group_offset = np.repeat(ends - lengths, lengths)
    k = np.arange(total, dtype=np.int64) - group_offset
    base = np.repeat(starts, lengths) + k * h
    for t in range(spb):
        seg = payload[base + t * stride]
        if bits == 1:
            out |= (seg & 1) << t
        else:
            out |= (seg & 3) << (2 * t)
    return out
