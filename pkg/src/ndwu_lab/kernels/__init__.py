"""Batch kernels with a compiled core and a pure-numpy fallback.

The compiled extension is used when importable; set NDWU_LAB_FORCE_PYTHON=1
to force the fallback (used by the benchmark and for debugging).
"""

import os

if os.environ.get("NDWU_LAB_FORCE_PYTHON") == "1":
    from . import _py as _impl
else:
    try:
        from . import _core as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _py as _impl

BACKEND = _impl.BACKEND
chsh_batch = _impl.chsh_batch
criterion_batch = _impl.criterion_batch

__all__ = ["BACKEND", "chsh_batch", "criterion_batch"]
