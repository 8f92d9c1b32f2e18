"""Exception types shared across the package."""


class StegoscanError(Exception):
    """Base class for stegoscan errors."""


class MalformedHeader(StegoscanError):
    """Carrier bytes claim a structured format but the header is inconsistent."""


class UnsupportedFormat(StegoscanError):
    """Carrier format exists but is not supported; use RAW mode explicitly."""


class CapacityExceeded(StegoscanError):
    """Message does not fit the carrier under the given embedding parameters."""


class OutputMismatch(StegoscanError):
    """Benchmark runs produced non-identical scan output (a correctness bug)."""
