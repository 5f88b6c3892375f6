"""Backend selection for the hot loops.

The compiled extension is used when it imports; otherwise (or when the
environment variable MTZETA_PURE_PYTHON is set to 1) the pure-Python
module is used. Both expose inner_sum, direct_block and polylog_series.
"""

import importlib
import os

from mtzeta import _kernels_py

__all__ = ["BACKEND", "inner_sum", "direct_block", "polylog_series", "get_backend", "available_backends"]


def _load_compiled():
    try:
        return importlib.import_module("mtzeta._ckernels")
    except ImportError:
        return None


_compiled = None if os.environ.get("MTZETA_PURE_PYTHON") == "1" else _load_compiled()
_impl = _compiled if _compiled is not None else _kernels_py
BACKEND = "cython" if _compiled is not None else "python"

inner_sum = _impl.inner_sum
direct_block = _impl.direct_block
polylog_series = _impl.polylog_series


def available_backends():
    """Names of the backends importable in this environment."""
    names = ["python"]
    if _load_compiled() is not None:
        names.insert(0, "cython")
    return names


def get_backend(name):
    """Return the kernel module for 'python' or 'cython'."""
    if name == "python":
        return _kernels_py
    if name == "cython":
        mod = _load_compiled()
        if mod is None:
            raise ImportError("compiled kernels are not built")
        return mod
    raise ValueError(f"unknown backend {name!r}")
