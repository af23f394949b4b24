"""Kernel selection.

The compiled extension is used when it was built; ``PUISEUX_PURE=1`` forces
the pure-Python implementation.
"""

import os

from . import _kernels_py

FOUND = _kernels_py.FOUND
EXHAUSTED = _kernels_py.EXHAUSTED
BUDGET = _kernels_py.BUDGET

_impl = _kernels_py
if os.environ.get("PUISEUX_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]
    except ImportError:
        pass

BACKEND = "compiled" if _impl is not _kernels_py else "python"

suffix_reach = _impl.suffix_reach
dfs_search = _impl.dfs_search
