"""Backend selection for the recursive-forecast hot kernels.

The compiled Cython extension is preferred when importable; setting the
environment variable ``OOSPRED_DISABLE_EXT`` (to any non-empty value)
forces the pure-NumPy fallback. ``BACKEND`` records which one is active.
"""

import os

if os.environ.get("OOSPRED_DISABLE_EXT"):
    from . import _recursive_py as _impl

    BACKEND = "python"
else:
    try:
        from . import _recursive as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        from . import _recursive_py as _impl

        BACKEND = "python"

benchmark_errors = _impl.benchmark_errors
marginal_errors = _impl.marginal_errors
