"""Backend selection for the bitmask kernels.

The compiled extension is used when it imports and the poset fits in 64 bits;
otherwise calls go to the pure-Python implementation. Set
``CAUSALQL_PURE_PYTHON=1`` to force the fallback for the whole process.
"""

from __future__ import annotations

import os

from . import _pykernels

_compiled = None
if not os.environ.get("CAUSALQL_PURE_PYTHON"):
    try:
        from . import _ckernels as _compiled
    except ImportError:  # extension not built
        _compiled = None

BACKEND = "cython" if _compiled is not None else "python"

# subset sweeps are only ever run far below this size
SWEEP_LIMIT = 32


def backends():
    """Names of the importable kernel modules, compiled first."""
    return {m.BACKEND: m for m in (_compiled, _pykernels) if m is not None}


def select(n):
    """Kernel module suitable for a poset of ``n`` elements."""
    if _compiled is not None and n <= 64:
        return _compiled
    return _pykernels
