"""Hot numerical kernels with a compiled core and a numpy fallback.

The compiled extension is used when it was built; setting the environment
variable ``CORRDYN_PURE_PYTHON=1`` forces the fallback.
"""

import os

from . import _pykernels as python_backend

try:
    if os.environ.get("CORRDYN_PURE_PYTHON", "") not in ("", "0"):
        raise ImportError("pure Python backend requested")
    from . import _ckernels as compiled_backend
except ImportError:
    compiled_backend = None

_active = compiled_backend if compiled_backend is not None else python_backend

BACKEND = "cython" if _active is compiled_backend else "python"

rk4_dissipator = _active.rk4_dissipator
conditional_entropy_grid = _active.conditional_entropy_grid

__all__ = [
    "BACKEND",
    "compiled_backend",
    "conditional_entropy_grid",
    "python_backend",
    "rk4_dissipator",
]
