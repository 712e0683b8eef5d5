"""Kernel backend selection.

The hot inner loops (Boltzmann series sums, erfc) exist twice: a scalar
version compiled with numba when available, and a vectorized pure-numpy
fallback. The environment variable QSTIRLING_BACKEND picks one:

    QSTIRLING_BACKEND=numba   require numba, raise if missing
    QSTIRLING_BACKEND=numpy   force the pure-numpy path
    (unset / auto)            numba if importable, numpy otherwise
"""
import os

_choice = os.environ.get("QSTIRLING_BACKEND", "auto").strip().lower()

HAVE_NUMBA = False
if _choice not in ("numpy", "python"):
    try:
        from numba import njit as _njit  # noqa: F401
        HAVE_NUMBA = True
    except ImportError:
        if _choice == "numba":
            raise ImportError(
                "QSTIRLING_BACKEND=numba but numba is not installed; "
                "pip install qstirling[speed]"
            )

USE_NUMBA = HAVE_NUMBA and _choice != "numpy"


def njit(*args, **kwargs):
    """numba.njit when the numba backend is active, identity otherwise."""
    if USE_NUMBA:
        from numba import njit as real_njit

        return real_njit(*args, **kwargs)
    if args and callable(args[0]):
        return args[0]

    def passthrough(func):
        return func

    return passthrough
