"""Numba switch.

Set ``PQTRIG_DISABLE_NUMBA=1`` (or any of ``true``/``yes``/``on``) to run the
pure numpy/Python kernels even when numba is installed.
"""

import os

_FLAG = "PQTRIG_DISABLE_NUMBA"


def numba_requested():
    return os.environ.get(_FLAG, "").strip().lower() not in ("1", "true", "yes", "on")


try:
    import numba
except ImportError:  # pragma: no cover
    numba = None

HAVE_NUMBA = numba is not None
USE_NUMBA = HAVE_NUMBA and numba_requested()


def passthrough(fn):
    return fn


def njit(fn):
    return numba.njit(fn, cache=False, nogil=True)
