"""Kernel backend selection.

Imports the compiled Clenshaw kernel when the extension was built, otherwise
the numpy implementation.  Set POSTRIG_FORCE_PYTHON_KERNELS=1 to force the
fallback (used by the benchmark and the backend-parity tests).
"""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("POSTRIG_FORCE_PYTHON_KERNELS"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _kernels_py

BACKEND: str = _impl.BACKEND
pair_sums = _impl.pair_sums
