"""Optional numba acceleration.

Kernels in :mod:`tihany_kit._kernels` are written in the numba-compatible
subset of Python and decorated with :func:`jit`.  Setting the environment
variable ``TIHANY_KIT_PURE=1`` (or running without numba installed) leaves
them as plain Python functions operating on numpy arrays.
"""

from __future__ import annotations

import os

_FLAG = "TIHANY_KIT_PURE"


def _wants_pure() -> bool:
    return os.environ.get(_FLAG, "").strip().lower() in {"1", "true", "yes", "on"}


try:
    if _wants_pure():
        raise ImportError
    import numba

    NUMBA_ENABLED = True
except ImportError:
    numba = None
    NUMBA_ENABLED = False


def jit(func):
    """``numba.njit(cache=True)`` when acceleration is enabled, identity otherwise."""
    if NUMBA_ENABLED:
        return numba.njit(cache=True)(func)
    return func


def backend() -> str:
    return "numba" if NUMBA_ENABLED else "python"
