"""Backend selection for the truth-table kernel.

The compiled extension is used when it imports; otherwise, or when
``TRIVALENT_PURE_PYTHON`` is set to a non-empty value, the pure-Python
implementation is used. Both return identical bytes for identical input.
"""

from __future__ import annotations

import os

from . import _kernel_py

if os.environ.get("TRIVALENT_PURE_PYTHON"):
    _impl = _kernel_py
else:
    try:
        from . import _kernel as _impl  # type: ignore[no-redef]
    except ImportError:  # extension not built
        _impl = _kernel_py

evaluate = _impl.evaluate
BACKEND: str = _impl.BACKEND

__all__ = ["evaluate", "BACKEND"]
