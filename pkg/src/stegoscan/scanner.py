"""Blind extraction: exhaustively test every start position and length.

For each start position the scanner decodes message bytes until one falls
outside the accept set (or the payload ends, or size_upper is reached).
Because acceptance of a byte sequence implies acceptance of every prefix,
that single run yields exactly the candidates the naive per-length rescan
would find, at a fraction of the cost.

Parallel scans divide start positions into contiguous chunks that worker
threads claim dynamically; every worker appends to its own buffers and the
chunks are reassembled in index order afterwards, so output is identical
for any worker count. The kernels release the GIL (numba backend), which
is where the actual speedup comes from.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field, replace

import numpy as np

from . import _backend
from .plausibility import AcceptSet, score

# starts per chunk: never below 4096; big payloads get ~64 chunks so the
# per-chunk Python overhead stays negligible while claiming still balances
_MIN_CHUNK = 4096
_TARGET_CHUNKS = 64


@dataclass(frozen=True)
class ScanSpec:
    """Blind-scan parameters."""

    size_down: int
    size_upper: int
    bits_per_byte: int = 1
    stride: int = 1
    workers: int = 1
    accept: AcceptSet = field(default_factory=AcceptSet.default)

    def __post_init__(self):
        if self.size_down < 1:
            raise ValueError(f"size_down must be >= 1, got {self.size_down}")
        if self.size_upper < self.size_down:
            raise ValueError(
                f"size_upper must be >= size_down, got [{self.size_down}, {self.size_upper}]"
            )
        if self.bits_per_byte not in (1, 2):
            raise ValueError(f"bits_per_byte must be 1 or 2, got {self.bits_per_byte}")
        if self.stride < 1:
            raise ValueError(f"stride must be >= 1, got {self.stride}")
        if self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")


@dataclass(frozen=True)
class Candidate:
    """One plausible hidden string: where it sits and what it says."""

    start_position: int
    length: int
    text: bytes
    score: float

    def sort_key(self):
        return (self.start_position, self.length)


def scan(payload, spec: ScanSpec) -> list[Candidate]:
    """All (start, length, text) triples that decode to accepted text.

    Output is sorted by (start_position, length) and does not depend on
    spec.workers.
    """
    candidates, _ = scan_capped(payload, spec, max_candidates=None)
    return candidates


def scan_sequential(payload, spec: ScanSpec) -> list[Candidate]:
    """Single-worker scan; same output as scan(), used as benchmark baseline."""
    return scan(payload, replace(spec, workers=1))


def scan_capped(
    payload, spec: ScanSpec, max_candidates: int | None
) -> tuple[list[Candidate], bool]:
    """scan() with a result cap guarding memory on adversarial carriers.

    Returns (candidates, truncated). When truncated, the list holds exactly
    the first max_candidates candidates in (start_position, length) order,
    regardless of worker count.
    """
    if max_candidates is not None and max_candidates < 0:
        raise ValueError("max_candidates must be >= 0 or None")
    arr = _as_payload_array(payload)
    n = arr.size
    table = spec.accept.as_bool_array()
    chunk = max(_MIN_CHUNK, -(-n // _TARGET_CHUNKS))
    nchunks = -(-n // chunk) if n else 0
    workers = min(spec.workers, nchunks) if nchunks else 0

    if workers <= 1:
        results = _run_sequential(arr, table, spec, chunk, nchunks, max_candidates)
    else:
        results = _run_parallel(arr, table, spec, chunk, nchunks, max_candidates, workers)

    merged: list[Candidate] = []
    for idx in range(nchunks):
        if idx not in results:
            break
        merged.extend(results[idx])
        if max_candidates is not None and len(merged) > max_candidates:
            break
    if max_candidates is not None and len(merged) > max_candidates:
        del merged[max_candidates:]
        return merged, True
    merged.sort(key=Candidate.sort_key)  # already ordered; cheap safety net
    return merged, False


def collapse_maximal(candidates: list[Candidate]) -> list[Candidate]:
    """Keep, per start position, only the longest candidate of each prefix chain.

    On full scan output every shorter candidate at a start is a prefix of
    the longest one there, so this reduces to one candidate per start.
    """
    ordered = sorted(candidates, key=Candidate.sort_key)
    kept: list[Candidate] = []
    current: Candidate | None = None
    for cand in ordered:
        if (
            current is not None
            and cand.start_position == current.start_position
            and cand.text.startswith(current.text)
        ):
            current = cand
            continue
        if current is not None:
            kept.append(current)
        current = cand
    if current is not None:
        kept.append(current)
    return kept


def _as_payload_array(payload) -> np.ndarray:
    if isinstance(payload, np.ndarray):
        if payload.dtype != np.uint8 or payload.ndim != 1:
            raise ValueError("payload array must be flat uint8")
        return np.ascontiguousarray(payload)
    return np.frombuffer(bytes(payload), np.uint8)


def _scan_chunk(arr, table, spec: ScanSpec, i0: int, i1: int) -> list[Candidate]:
    runs = _backend.run_lengths(
        arr, table, i0, i1, spec.stride, spec.bits_per_byte, spec.size_upper
    )
    hits = np.nonzero(runs >= spec.size_down)[0]
    if hits.size == 0:
        return []
    starts = (hits + i0).astype(np.int64)
    lengths = runs[hits].astype(np.int64)
    flat = _backend.extract_many(arr, starts, lengths, spec.stride, spec.bits_per_byte)
    out: list[Candidate] = []
    offset = 0
    for g in range(starts.size):
        start = int(starts[g])
        longest = int(lengths[g])
        full = flat[offset : offset + longest].tobytes()
        offset += longest
        for j in range(spec.size_down, longest + 1):
            text = full[:j]
            out.append(Candidate(start, j, text, score(text)))
    return out


def _run_sequential(arr, table, spec, chunk, nchunks, max_candidates):
    results: dict[int, list[Candidate]] = {}
    total = 0
    for idx in range(nchunks):
        i0 = idx * chunk
        cands = _scan_chunk(arr, table, spec, i0, min(arr.size, i0 + chunk))
        results[idx] = cands
        total += len(cands)
        if max_candidates is not None and total > max_candidates:
            break
    return results


def _run_parallel(arr, table, spec, chunk, nchunks, max_candidates, workers):
    lock = threading.Lock()
    results: dict[int, list[Candidate]] = {}
    errors: list[BaseException] = []
    state = {"next_claim": 0, "next_expected": 0, "prefix_total": 0, "stop": False}

    def claim() -> int | None:
        with lock:
            if state["stop"] or state["next_claim"] >= nchunks or errors:
                return None
            idx = state["next_claim"]
            state["next_claim"] += 1
            return idx

    def complete(idx: int, cands: list[Candidate]) -> None:
        with lock:
            results[idx] = cands
            while state["next_expected"] in results:
                state["prefix_total"] += len(results[state["next_expected"]])
                state["next_expected"] += 1
            if max_candidates is not None and state["prefix_total"] > max_candidates:
                state["stop"] = True

    def work() -> None:
        try:
            while True:
                idx = claim()
                if idx is None:
                    return
                i0 = idx * chunk
                complete(idx, _scan_chunk(arr, table, spec, i0, min(arr.size, i0 + chunk)))
        except BaseException as exc:  # propagate to the caller
            with lock:
                errors.append(exc)

    threads = [threading.Thread(target=work, name=f"stegoscan-{i}") for i in range(workers)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    if errors:
        raise errors[0]
    return results
