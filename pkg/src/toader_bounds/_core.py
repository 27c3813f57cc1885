"""Kernel backend selection.

The compiled ``_ckernels`` module is used when it was built; otherwise the
numpy implementation in ``_pykernels`` is used.  Setting the environment
variable ``TOADER_BOUNDS_PURE_PYTHON=1`` forces the fallback.
"""
import os

from . import _pykernels

if os.environ.get("TOADER_BOUNDS_PURE_PYTHON", "") not in ("", "0"):
    kernels = _pykernels
else:
    try:
        from . import _ckernels as kernels
    except ImportError:
        kernels = _pykernels

BACKEND = kernels.BACKEND
