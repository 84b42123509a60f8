"""Numba switch for the hot kernels.

Set ``PENDANTPACK_DISABLE_NUMBA=1`` (or have numba missing) to run every
kernel as plain Python. Both paths execute the same source.
"""

import os

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

_FLAG = os.environ.get("PENDANTPACK_DISABLE_NUMBA", "").strip().lower()
NUMBA_ENABLED = numba is not None and _FLAG not in ("1", "true", "yes", "on")
BACKEND = "numba" if NUMBA_ENABLED else "python"


def njit(f=None, **options):
    """``numba.njit`` when enabled, identity otherwise."""
    options.setdefault("cache", True)
    options.setdefault("nogil", True)
    if not NUMBA_ENABLED:
        if f is None:
            return lambda g: g
        return f
    if f is None:
        return lambda g: numba.njit(g, **options)
    return numba.njit(f, **options)


def as_kernel_array(values):
    """Convert an int sequence to what the active backend indexes fastest."""
    if NUMBA_ENABLED:
        import numpy as np

        return np.asarray(values, dtype=np.int64)
    return [int(v) for v in values]
