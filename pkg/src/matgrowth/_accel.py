"""Backend switch for the numeric kernels.

Numba is used when importable unless ``MATGROWTH_DISABLE_NUMBA`` is set to a
truthy value, in which case the pure-numpy kernels are used everywhere.
"""
import os

_FLAG = "MATGROWTH_DISABLE_NUMBA"


def _numba_requested():
    return os.environ.get(_FLAG, "").strip().lower() not in ("1", "true", "yes", "on")


# the bundled TBB is too old for numba; avoid the warning on every parallel call
os.environ.setdefault("NUMBA_THREADING_LAYER", "workqueue")

try:
    import numba  # noqa: F401

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and _numba_requested()


def backend_name():
    return "numba" if USE_NUMBA else "numpy"


def set_threads(n):
    """Set kernel thread count; 0 means leave numba's default."""
    if USE_NUMBA and n and n > 0:
        import numba

        numba.set_num_threads(min(n, numba.config.NUMBA_NUM_THREADS))
