"""Scan kernel backend selection.

The STEGOSCAN_BACKEND environment variable picks the implementation at
import time: "numba" (the default when numba is importable) or "numpy"
(the pure-numpy fallback). Setting "numba" on a machine without numba is
an error rather than a silent slowdown.
"""

from __future__ import annotations

import os

ENV_VAR = "STEGOSCAN_BACKEND"


def _load():
    choice = os.environ.get(ENV_VAR, "").strip().lower()
    if choice not in ("", "numba", "numpy"):
        raise ValueError(f"{ENV_VAR} must be 'numba' or 'numpy', got {choice!r}")
    if choice == "numpy":
        from . import _scan_numpy
        return _scan_numpy, "numpy"
    try:
        from . import _scan_numba
        return _scan_numba, "numba"
    except ImportError:
        if choice == "numba":
            raise
        from . import _scan_numpy
        return _scan_numpy, "numpy"


_impl, _name = _load()

run_lengths = _impl.run_lengths
extract_many = _impl.extract_many


def backend_name() -> str:
    """Name of the active kernel backend ("numba" or "numpy")."""
    return _name
