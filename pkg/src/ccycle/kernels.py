"""Select the Weyl-group kernel backend at import time.

The compiled ``_kernels`` extension is used when it was built; otherwise the
pure-Python ``_kernels_py`` twin.  Set ``CCYCLE_PURE_PYTHON=1`` to force the
fallback.
"""
from __future__ import annotations

import os

from . import _kernels_py

try:
    if os.environ.get("CCYCLE_PURE_PYTHON"):
        raise ImportError("pure Python forced")
    from . import _kernels as _compiled
except ImportError:
    _compiled = None

BACKENDS = {"python": _kernels_py.Kernel}
if _compiled is not None:
    BACKENDS["cython"] = _compiled.Kernel

DEFAULT_BACKEND = "cython" if "cython" in BACKENDS else "python"


def kernel_class(backend: str | None = None):
    name = backend or DEFAULT_BACKEND
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"kernel backend {name!r} unavailable; have {sorted(BACKENDS)}") from None
