"""LSB steganography embedding and blind parallel recovery of hidden text."""

from ._backend import backend_name
from .bench import BenchRecord, BenchReport, run_length_sweep, run_sweep
from .bitops import clear_bit, get_bit, set_bit, write_bit
from .carrier import CarrierFormat, CarrierImage, load_carrier, save_carrier
from .codec import EmbedSpec, capacity, embed, extract
from .errors import (
    CapacityExceeded,
    MalformedHeader,
    OutputMismatch,
    StegoscanError,
    UnsupportedFormat,
)
from .plausibility import AcceptSet, ascii_verify, score
from .scanner import (
    Candidate,
    ScanSpec,
    collapse_maximal,
    scan,
    scan_capped,
    scan_sequential,
)

__version__ = "0.1.0"

__all__ = [
    "AcceptSet",
    "BenchRecord",
    "BenchReport",
    "Candidate",
    "CapacityExceeded",
    "CarrierFormat",
    "CarrierImage",
    "EmbedSpec",
    "MalformedHeader",
    "OutputMismatch",
    "ScanSpec",
    "StegoscanError",
    "UnsupportedFormat",
    "ascii_verify",
    "backend_name",
    "capacity",
    "clear_bit",
    "collapse_maximal",
    "embed",
    "extract",
    "get_bit",
    "load_carrier",
    "run_length_sweep",
    "run_sweep",
    "save_carrier",
    "scan",
    "scan_capped",
    "scan_sequential",
    "score",
    "set_bit",
    "write_bit",
]
