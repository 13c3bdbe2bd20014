"""Kernel backend selection.

Prefers the compiled extension and falls back to the pure-Python
implementation when the extension was not built. Set CELLFLOW_PURE=1 to
force the fallback (used by tests and the benchmark).
"""

from __future__ import annotations

import os

if os.environ.get("CELLFLOW_PURE"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]
    except ImportError:
        from . import _kernels_py as _impl  # type: ignore[no-redef]

BACKEND = _impl.BACKEND_NAME

grid_component_labels = _impl.grid_component_labels
scc_labels = _impl.scc_labels
has_cycle = _impl.has_cycle
removal_fix_mask = _impl.removal_fix_mask
