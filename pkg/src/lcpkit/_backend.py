"""Kernel selection.

The compiled module is used when it was built; otherwise the numpy fallback.
Set ``LCPKIT_PURE_PYTHON=1`` before import to force the fallback.
"""

import os

if os.environ.get("LCPKIT_PURE_PYTHON", "").strip() not in ("", "0"):
    from . import _pykernels as kernels
else:
    try:
        from . import _ckernels as kernels
    except ImportError:
        from . import _pykernels as kernels

BACKEND = kernels.NAME

__all__ = ["kernels", "BACKEND"]
