"""JIT switch for the hot kernels.

Set ``PERFCODES_NUMBA=0`` to run the pure-numpy code paths instead of the
numba-compiled ones; nothing is compiled then.  The flag is read once at
import time.
"""

import os

try:
    import numba
except ImportError:  # pragma: no cover
    numba = None

USE_NUMBA = numba is not None and os.environ.get("PERFCODES_NUMBA", "1") not in ("0", "false", "no")


def njit(*args, **kwargs):
    """``numba.njit`` when numba is enabled, otherwise a no-op decorator."""
    if not USE_NUMBA:
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return lambda f: f
    return numba.njit(*args, **kwargs)


def set_threads(count: int | None) -> None:
    if numba is None or not count:
        return
    numba.set_num_threads(max(1, min(count, numba.config.NUMBA_NUM_THREADS)))
