"""Optional numba acceleration for the hot numeric kernels.

Kernels decorated with :func:`jit` are compiled with ``numba.njit`` when
numba is importable.  Setting the environment variable ``WEIBULL_R_NO_NUMBA``
to ``1``/``true`` (checked once, at import) selects the pure Python/numpy
fallback instead: the same code runs uncompiled, producing the same values,
only slower.  ``benchmarks/bench_kernels.py`` compares the two paths.
"""

import os


def _numba_wanted() -> bool:
    flag = os.environ.get("WEIBULL_R_NO_NUMBA", "").strip().lower()
    return flag not in {"1", "true", "yes", "on"}


NUMBA_ENABLED = False
_njit = None
if _numba_wanted():
    try:
        from numba import njit as _njit

        NUMBA_ENABLED = True
    except ImportError:  # pragma: no cover - numba is a hard dep, but degrade anyway
        _njit = None


def jit(func):
    """Compile ``func`` with numba when enabled, else return it unchanged."""
    if NUMBA_ENABLED:
        return _njit(cache=True)(func)
    return func
