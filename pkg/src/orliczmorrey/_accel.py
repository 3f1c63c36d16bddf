"""Backend selection for the hot loops.

Set ``ORLICZMORREY_DISABLE_NUMBA=1`` to force the pure-numpy kernels. The
numba path is used whenever numba imports cleanly and the flag is unset.
"""
import os

_FLAG = "ORLICZMORREY_DISABLE_NUMBA"


def _numba_disabled() -> bool:
    return os.environ.get(_FLAG, "").strip().lower() in ("1", "true", "yes", "on")


try:
    import numba as _numba  # noqa: F401
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and not _numba_disabled()


def backend_name() -> str:
    return "numba" if USE_NUMBA else "numpy"
