"""Timing harness: worker sweeps, length sweeps, speedup reports, CSV.

Speedups are derived quantities, never measured: a report is a pure
function of its records (median wall time per worker count, speedup
T(1)/T(n)), so the arithmetic is unit-testable without running anything.
Every timed run is checked against a reference output first; a mismatch
is a correctness bug and aborts the benchmark.

Wall times come from time.perf_counter (monotonic, sub-millisecond).
Medians over repeats absorb scheduler noise that single-shot timings
cannot.
"""

from __future__ import annotations

import csv
import os
import statistics
import time
from dataclasses import dataclass, replace
from typing import IO, Iterable, Sequence

from .errors import OutputMismatch
from .scanner import ScanSpec, scan

RECORD_COLUMNS = (
    "payload_length",
    "size_down",
    "size_upper",
    "bits",
    "stride",
    "workers",
    "repeat",
    "wall_time_s",
)
REPORT_COLUMNS = ("workers", "median_time_s", "speedup")


@dataclass(frozen=True)
class BenchRecord:
    """One timed scan."""

    workers: int
    wall_time_s: float
    payload_length: int
    size_down: int
    size_upper: int
    bits_per_byte: int
    stride: int
    repeat_index: int

    def __post_init__(self):
        if self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")
        if self.wall_time_s <= 0:
            raise ValueError(f"wall_time_s must be > 0, got {self.wall_time_s}")

    def config_key(self) -> tuple:
        return (
            self.payload_length,
            self.size_down,
            self.size_upper,
            self.bits_per_byte,
            self.stride,
        )


@dataclass(frozen=True)
class ReportRow:
    """Median time and derived speedup for one (config, workers) group."""

    size_upper: int
    workers: int
    median_time_s: float
    speedup: float
    oversubscribed: bool


@dataclass(frozen=True)
class BenchReport:
    records: tuple[BenchRecord, ...]
    hardware_threads: int

    @classmethod
    def from_records(
        cls, records: Iterable[BenchRecord], hardware_threads: int | None = None
    ) -> "BenchReport":
        if hardware_threads is None:
            hardware_threads = os.cpu_count() or 1
        return cls(records=tuple(records), hardware_threads=hardware_threads)

    def median_time(self, workers: int, size_upper: int | None = None) -> float:
        times = [
            r.wall_time_s
            for r in self.records
            if r.workers == workers and (size_upper is None or r.size_upper == size_upper)
        ]
        if not times:
            raise ValueError(f"no records for workers={workers}, size_upper={size_upper}")
        return statistics.median(times)

    def speedup(self, workers: int, size_upper: int | None = None) -> float:
        """T(1) / T(n) from medians; exactly 1.0 for workers=1 by construction."""
        if workers == 1:
            self.median_time(1, size_upper)  # still require the records to exist
            return 1.0
        return self.median_time(1, size_upper) / self.median_time(workers, size_upper)

    def rows(self) -> list[ReportRow]:
        """One row per (size_upper, workers) pair, ordered."""
        keys = sorted({(r.size_upper, r.workers) for r in self.records})
        return [
            ReportRow(
                size_upper=upper,
                workers=workers,
                median_time_s=self.median_time(workers, upper),
                speedup=self.speedup(workers, upper),
                oversubscribed=workers > self.hardware_threads,
            )
            for upper, workers in keys
        ]


def run_sweep(
    payload,
    spec: ScanSpec,
    worker_counts: Sequence[int],
    repeats: int = 3,
) -> BenchReport:
    """Time scan() per worker count, checking every run against a reference.

    worker_counts must include 1: speedups are defined against the
    single-worker median.
    """
    if not worker_counts:
        raise ValueError("worker_counts must be nonempty")
    if 1 not in worker_counts:
        raise ValueError("worker_counts must include 1 (the speedup baseline)")
    if repeats < 1:
        raise ValueError(f"repeats must be >= 1, got {repeats}")
    reference = scan(payload, replace(spec, workers=1))  # also warms the kernels
    records = []
    for workers in worker_counts:
        run_spec = replace(spec, workers=workers)
        for repeat in range(repeats):
            t0 = time.perf_counter()
            out = scan(payload, run_spec)
            elapsed = time.perf_counter() - t0
            if out != reference:
                raise OutputMismatch(
                    f"scan with workers={workers} repeat={repeat} diverged from baseline"
                )
            records.append(_record(payload, run_spec, repeat, elapsed))
    return BenchReport.from_records(records)


def run_length_sweep(
    payload,
    size_down: int,
    upper_values: Sequence[int],
    workers: tuple[int, int],
    spec: ScanSpec | None = None,
    repeats: int = 1,
) -> BenchReport:
    """Sweep size_upper with a (baseline, peak) worker pair, as in bench reports
    comparing sequential against maximum parallelism per search-range column."""
    if not upper_values or list(upper_values) != sorted(upper_values):
        raise ValueError("upper_values must be nonempty and ascending")
    if workers[0] != 1:
        raise ValueError("baseline workers must be 1")
    if repeats < 1:
        raise ValueError(f"repeats must be >= 1, got {repeats}")
    base = spec if spec is not None else ScanSpec(size_down=size_down, size_upper=upper_values[-1])
    records = []
    warmed = False
    for upper in upper_values:
        specs = [
            replace(base, size_down=size_down, size_upper=upper, workers=w) for w in workers
        ]
        if not warmed:
            scan(payload, specs[0])
            warmed = True
        reference = None
        for run_spec in specs:
            for repeat in range(repeats):
                t0 = time.perf_counter()
                out = scan(payload, run_spec)
                elapsed = time.perf_counter() - t0
                if reference is None:
                    reference = out
                elif out != reference:
                    raise OutputMismatch(
                        f"scan with workers={run_spec.workers} size_upper={upper} "
                        "diverged from baseline"
                    )
                records.append(_record(payload, run_spec, repeat, elapsed))
    return BenchReport.from_records(records)


def _record(payload, spec: ScanSpec, repeat: int, elapsed: float) -> BenchRecord:
    return BenchRecord(
        workers=spec.workers,
        wall_time_s=elapsed,
        payload_length=len(payload),
        size_down=spec.size_down,
        size_upper=spec.size_upper,
        bits_per_byte=spec.bits_per_byte,
        stride=spec.stride,
        repeat_index=repeat,
    )


def write_records_csv(records: Iterable[BenchRecord], out: IO[str]) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(RECORD_COLUMNS)
    for r in records:
        writer.writerow(
            [
                r.payload_length,
                r.size_down,
                r.size_upper,
                r.bits_per_byte,
                r.stride,
                r.workers,
                r.repeat_index,
                f"{r.wall_time_s:.6f}",
            ]
        )


def write_report_csv(report: BenchReport, out: IO[str]) -> None:
    """Worker/median/speedup table; requires a single scan configuration."""
    uppers = {r.size_upper for r in report.records}
    if len(uppers) > 1:
        raise ValueError("report spans multiple size_upper values; write records instead")
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(REPORT_COLUMNS)
    for row in report.rows():
        writer.writerow([row.workers, f"{row.median_time_s:.6f}", f"{row.speedup:.3f}"])


def format_report(report: BenchReport) -> str:
    """Human-readable table; oversubscribed worker counts are marked with '*'."""
    lines = [f"{'size_upper':>10} {'workers':>8} {'median_s':>12} {'speedup':>8}"]
    flagged = False
    for row in report.rows():
        mark = "*" if row.oversubscribed else " "
        flagged = flagged or row.oversubscribed
        lines.append(
            f"{row.size_upper:>10} {row.workers:>7}{mark} "
            f"{row.median_time_s:>12.6f} {row.speedup:>8.3f}"
        )
    if flagged:
        lines.append(f"* workers exceed detected hardware parallelism ({report.hardware_threads})")
    return "\n".join(lines)
