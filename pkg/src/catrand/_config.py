"""Runtime switches for the compiled kernels.

Set ``CATRAND_DISABLE_NUMBA=1`` in the environment to force the pure-numpy
kernels even when numba is importable.
"""
import os

try:
    import numba  # noqa: F401

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is an optional accelerator
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and os.environ.get("CATRAND_DISABLE_NUMBA", "").lower() not in (
    "1",
    "true",
    "yes",
)

# @njit(cache=True) writes next to the package; harmless, and cuts test start-up.
ENABLE_JIT_CACHE = os.environ.get("CATRAND_JIT_CACHE", "1") != "0"


def enable_jit():
    """Route kernel calls through numba (if installed)."""
    global USE_NUMBA
    USE_NUMBA = HAVE_NUMBA


def disable_jit():
    """Route kernel calls through the pure-numpy fallbacks."""
    global USE_NUMBA
    USE_NUMBA = False
