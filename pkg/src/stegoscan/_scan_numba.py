"""Numba-compiled scan kernels (default backend).

Both kernels release the GIL so scan workers can run them concurrently from
plain threads, and cache their compilation on disk. Contract is shared with
`_scan_numpy`; see there for the semantics.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(nogil=True, cache=True)
def run_lengths(payload, table, start0, start1, stride, bits, max_len):
    n = payload.shape[0]
    count = start1 - start0
    out = np.zeros(count, np.int32)
    spb = 8 // bits
    h = spb * stride
    last_fit = n - 1 - (spb - 1) * stride
    for t in range(count):
        q = start0 + t
        c = 0
        while c < max_len and q <= last_fit:
            b = 0
            if bits == 1:
                for s in range(8):
                    b |= (payload[q + s * stride] & 1) << s
            else:
                for s in range(4):
                    b |= (payload[q + s * stride] & 3) << (2 * s)
            if table[b] == 0:
                break
            c += 1
            q += h
        out[t] = c
    return out


@njit(nogil=True, cache=True)
def extract_many(payload, starts, lengths, stride, bits):
    total = 0
    for g in range(lengths.shape[0]):
        total += lengths[g]
    out = np.zeros(total, np.uint8)
    spb = 8 // bits
    h = spb * stride
    pos = 0
    for g in range(starts.shape[0]):
        q = starts[g]
        for _ in range(lengths[g]):
            b = 0
            if bits == 1:
                for s in range(8):
                    b |= (payload[q + s * stride] & 1) << s
            else:
                for s in range(4):
                    b |= (payload[q + s * stride] & 3) << (2 * s)
            out[pos] = b
            pos += 1
            q += h
    return out
