"""Selects the compiled state kernel, falling back to pure Python.

Set ``TWISTBRACKET_PURE=1`` to force the fallback.
"""

import os

from . import _kernel_py

BACKEND = "python"
if os.environ.get("TWISTBRACKET_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _kernel as _compiled
    except ImportError:  # extension not built
        _compiled = None
    else:
        BACKEND = "cython"
else:
    _compiled = None

state_histogram = _compiled.state_histogram if _compiled is not None else _kernel_py.state_histogram
state_histogram_py = _kernel_py.state_histogram

__all__ = ["BACKEND", "state_histogram", "state_histogram_py"]
