"""Backend selection for the residue-enumeration kernel.

The compiled core is used when it imports and the codes fit in int64.  Set
``DIVSTRATA_PURE_PYTHON=1`` to force the Python fallback.
"""
import os

from . import _pykernels

_INT64_LIMIT = 2**62

try:
    if os.environ.get("DIVSTRATA_PURE_PYTHON") == "1":
        raise ImportError("pure Python requested")
    from . import _ckernels
except ImportError:
    _ckernels = None

BACKEND = "cython" if _ckernels is not None else "python"


def available_backends():
    return ["python"] + (["cython"] if _ckernels is not None else [])


def residue_codes(basis, n, m, backend=None):
    backend = backend or BACKEND
    if backend == "cython" and _ckernels is not None and n**m < _INT64_LIMIT:
        return _ckernels.residue_codes(basis, n, m)
    if backend not in ("python", "cython"):
        raise ValueError(f"unknown backend {backend!r}")
    return _pykernels.residue_codes(basis, n, m)
