"""Command-line front end: embed, extract, scan and bench over carrier files.

Exit codes: 0 success, 1 usage error, 2 I/O or carrier format error,
3 message does not fit the carrier. Results go to stdout, diagnostics to
stderr. Output files are written atomically (temp file + rename), so a
failed run never leaves a partial file behind.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile

import numpy as np

from . import bench as bench_mod
from . import carrier as carrier_mod
from . import codec, scanner
from ._backend import backend_name
from .errors import CapacityExceeded, MalformedHeader, StegoscanError, UnsupportedFormat
from .plausibility import AcceptSet

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_CAPACITY = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad flags; we reserve 2 for I/O errors
    def error(self, message):
        raise _UsageError(message)


def main(argv=None) -> int:
    try:
        args = _build_parser().parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapacityExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (MalformedHeader, UnsupportedFormat, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except StegoscanError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


def _build_parser() -> _Parser:
    parser = _Parser(prog="stegoscan", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p_embed = sub.add_parser("embed", help="hide a message in a carrier file")
    _add_carrier_args(p_embed)
    group = p_embed.add_mutually_exclusive_group(required=True)
    group.add_argument("--text", help="message as a command-line string")
    group.add_argument("--message-file", help="message file (binary safe)")
    _add_placement_args(p_embed)
    p_embed.add_argument("--out", required=True, help="output carrier path")
    p_embed.set_defaults(func=_cmd_embed)

    p_extract = sub.add_parser("extract", help="read a message back with known parameters")
    _add_carrier_args(p_extract)
    _add_placement_args(p_extract)
    p_extract.add_argument("--length", type=int, required=True, help="message length in bytes")
    p_extract.add_argument("--out", help="write the message to a file instead of stdout")
    p_extract.set_defaults(func=_cmd_extract)

    p_scan = sub.add_parser("scan", help="blind-scan a carrier for hidden text")
    _add_carrier_args(p_scan)
    p_scan.add_argument("--min-len", type=int, required=True, help="smallest length to test")
    p_scan.add_argument("--max-len", type=int, required=True, help="largest length to test")
    p_scan.add_argument("--bits", type=int, default=1, choices=(1, 2))
    p_scan.add_argument("--stride", type=int, default=1)
    p_scan.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    p_scan.add_argument(
        "--accept",
        default="printable+ws",
        help="printable | printable+ws | custom:<hex-ranges> (e.g. custom:20-7E,09)",
    )
    p_scan.add_argument("--format", choices=("csv", "jsonl"), default="csv")
    p_scan.add_argument("--max-candidates", type=int, default=1_000_000)
    p_scan.add_argument(
        "--collapse", action="store_true", help="keep only the longest candidate per start"
    )
    p_scan.set_defaults(func=_cmd_scan)

    p_bench = sub.add_parser("bench", help="time scans and report speedups")
    _add_carrier_args(p_bench, required=False)
    p_bench.add_argument("--random-bytes", type=int, help="use a synthetic random payload")
    p_bench.add_argument("--seed", type=int, default=0, help="seed for --random-bytes")
    p_bench.add_argument("--min-len", type=int, default=10)
    p_bench.add_argument("--max-len", type=int, default=25)
    p_bench.add_argument("--bits", type=int, default=1, choices=(1, 2))
    p_bench.add_argument("--stride", type=int, default=1)
    p_bench.add_argument(
        "--workers", default="1,2,4", help="comma-separated worker counts (must include 1)"
    )
    p_bench.add_argument("--repeats", type=int, default=3)
    p_bench.add_argument(
        "--upper-values",
        help="comma-separated size_upper sweep; switches to the length-sweep mode",
    )
    p_bench.add_argument("--records-csv", help="write raw timing records to this path")
    p_bench.set_defaults(func=_cmd_bench)
    return parser


def _add_carrier_args(parser, required=True):
    parser.add_argument("--carrier", required=required, help="carrier file path")
    parser.add_argument(
        "--raw", action="store_true", help="treat the carrier as a raw byte buffer, not BMP"
    )


def _add_placement_args(parser):
    parser.add_argument("--start", type=int, default=0, help="payload byte offset")
    parser.add_argument("--stride", type=int, default=1, help="carrier bytes between slots")
    parser.add_argument("--bits", type=int, default=1, choices=(1, 2), help="low bits per byte")


def _load(args) -> carrier_mod.CarrierImage:
    with open(args.carrier, "rb") as fh:
        data = fh.read()
    hint = carrier_mod.CarrierFormat.RAW if args.raw else None
    return carrier_mod.load_carrier(data, hint)


def _write_atomic(path: str, data: bytes) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".stegoscan-")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _parse_accept(text: str) -> AcceptSet:
    if text == "printable":
        return AcceptSet.printable()
    if text == "printable+ws":
        return AcceptSet.default()
    if text.startswith("custom:"):
        try:
            return AcceptSet.from_hex_ranges(text[len("custom:") :])
        except ValueError as exc:
            raise _UsageError(f"--accept: {exc}") from None
    raise _UsageError("--accept must be printable, printable+ws or custom:<hex-ranges>")


def _cmd_embed(args) -> int:
    spec = _embed_spec(args)
    image = _load(args)
    if args.text is not None:
        message = args.text.encode()
    else:
        with open(args.message_file, "rb") as fh:
            message = fh.read()
    image.payload = codec.embed(image.payload, message, spec)
    _write_atomic(args.out, carrier_mod.save_carrier(image))
    print(
        f"embedded {len(message)} bytes at start={spec.start_position} "
        f"stride={spec.stride} bits={spec.bits_per_byte} -> {args.out}",
        file=sys.stderr,
    )
    return EXIT_OK


def _cmd_extract(args) -> int:
    spec = _embed_spec(args)
    if args.length < 0:
        raise _UsageError("--length must be >= 0")
    image = _load(args)
    message = codec.extract(image.payload, spec, args.length)
    if args.out:
        _write_atomic(args.out, message)
    else:
        sys.stdout.buffer.write(message)
        sys.stdout.buffer.flush()
        if sys.stdout.isatty():
            print()
    return EXIT_OK


def _embed_spec(args) -> codec.EmbedSpec:
    try:
        return codec.EmbedSpec(
            start_position=args.start, stride=args.stride, bits_per_byte=args.bits
        )
    except ValueError as exc:
        raise _UsageError(str(exc)) from None


def _cmd_scan(args) -> int:
    try:
        spec = scanner.ScanSpec(
            size_down=args.min_len,
            size_upper=args.max_len,
            bits_per_byte=args.bits,
            stride=args.stride,
            workers=args.threads,
            accept=_parse_accept(args.accept),
        )
    except ValueError as exc:
        raise _UsageError(str(exc)) from None
    image = _load(args)
    max_candidates = args.max_candidates if args.max_candidates >= 0 else None
    candidates, truncated = scanner.scan_capped(image.payload, spec, max_candidates)
    if args.collapse:
        candidates = scanner.collapse_maximal(candidates)
    if args.format == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["start_position", "length", "score", "text"])
        for c in candidates:
            writer.writerow([c.start_position, c.length, f"{c.score:.6f}", _text_str(c.text)])
    else:
        for c in candidates:
            print(
                json.dumps(
                    {
                        "start_position": c.start_position,
                        "length": c.length,
                        "score": round(c.score, 6),
                        "text": _text_str(c.text),
                    }
                )
            )
    if truncated:
        print(
            f"warning: output truncated at {max_candidates} candidates", file=sys.stderr
        )
    return EXIT_OK


def _text_str(text: bytes) -> str:
    # byte-transparent: accept sets may admit any octet
    return text.decode("latin-1")


def _cmd_bench(args) -> int:
    if (args.carrier is None) == (args.random_bytes is None):
        raise _UsageError("bench needs exactly one of --carrier or --random-bytes")
    if args.random_bytes is not None:
        rng = np.random.default_rng(args.seed)
        payload = rng.integers(0, 256, args.random_bytes, dtype=np.uint8)
    else:
        payload = _load(args).payload
    try:
        worker_counts = [int(w) for w in args.workers.split(",") if w.strip()]
    except ValueError:
        raise _UsageError(f"--workers must be comma-separated integers: {args.workers!r}")
    try:
        spec = scanner.ScanSpec(
            size_down=args.min_len,
            size_upper=args.max_len,
            bits_per_byte=args.bits,
            stride=args.stride,
        )
        if args.upper_values:
            uppers = [int(u) for u in args.upper_values.split(",") if u.strip()]
            report = bench_mod.run_length_sweep(
                payload,
                size_down=args.min_len,
                upper_values=uppers,
                workers=(1, max(worker_counts)),
                spec=spec,
                repeats=args.repeats,
            )
        else:
            report = bench_mod.run_sweep(payload, spec, worker_counts, repeats=args.repeats)
    except ValueError as exc:
        raise _UsageError(str(exc)) from None
    print(f"backend: {backend_name()}", file=sys.stderr)
    print(bench_mod.format_report(report))
    if args.records_csv:
        buf = io.StringIO()
        bench_mod.write_records_csv(report.records, buf)
        _write_atomic(args.records_csv, buf.getvalue().encode())
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
