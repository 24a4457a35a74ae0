"""Backend selection for the finite-table kernels.

The compiled extension is used when it was built; set ``CLASSALG_PURE=1`` to
force the pure-Python fallback.
"""
import os

from . import _kernels_py

BACKEND = "python"
if os.environ.get("CLASSALG_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _impl

        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _kernels_py
else:
    _impl = _kernels_py

respects = _impl.respects
hom_violation = _impl.hom_violation


def backends():
    """Available backends as ``{name: module}``."""
    out = {"python": _kernels_py}
    try:
        from . import _kernels

        out["cython"] = _kernels
    except ImportError:
        pass
    return out
