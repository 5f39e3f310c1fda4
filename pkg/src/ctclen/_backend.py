"""Kernel selection.

The compiled extension is used when it imports; otherwise the pure-Python
twin. ``CTCLEN_BACKEND=python`` forces the fallback, ``CTCLEN_BACKEND=cython``
makes a missing extension an ImportError.
"""
import logging
import os

from . import _kernels_py

log = logging.getLogger(__name__)

BACKENDS = {"python": _kernels_py}

try:
    from . import _kernels as _kernels_c
except ImportError:  # extension not built
    _kernels_c = None
else:
    BACKENDS["cython"] = _kernels_c


def _select():
    wanted = os.environ.get("CTCLEN_BACKEND", "auto").lower()
    if wanted == "python":
        return "python"
    if wanted == "cython":
        if _kernels_c is None:
            raise ImportError("CTCLEN_BACKEND=cython but ctclen._kernels is not built")
        return "cython"
    if _kernels_c is None:
        log.debug("compiled kernels unavailable, using the pure-Python fallback")
        return "python"
    return "cython"


BACKEND = _select()


def get(name=None):
    """Kernel module by name (default: the one selected at import)."""
    name = name or BACKEND
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"backend {name!r} is not available (have: {sorted(BACKENDS)})") from None
